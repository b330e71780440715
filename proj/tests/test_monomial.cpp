#include <random>

#include <gtest/gtest.h>

#include "support/corpus.hpp"
#include "support/seed.hpp"

using namespace splicetype;
using namespace splicetype::testing;

namespace {

WeightedPolynomial z(std::initializer_list<std::pair<const char*, std::uint64_t>> exps, int c = 1) {
  Monomial m;
  for (auto [w, e] : exps) m[w] = e;
  return WeightedPolynomial::monomial(m, c);
}

template <typename F>
ErrorCode code_of(F f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvariantViolation;
}

// Whether some exponent vector in the full box prod [0, m_vv / m_vw] is admissible.
bool brute_force_admissible(const PlumbingGraph& g, const MMatrix& m, std::size_t v, std::size_t u,
                            std::uint64_t box_limit, bool& searched) {
  auto branch = branch_vertices(g, v, u);
  std::vector<std::size_t> ends;
  for (auto x : branch)
    if (g.degree(x) == 1) ends.push_back(x);
  std::vector<std::uint64_t> hi;
  std::uint64_t box = 1;
  for (auto e : ends) {
    hi.push_back(to_uint64(m(v, v) / m(v, e)));
    box *= hi.back() + 1;
    if (box > box_limit) {
      searched = false;
      return false;
    }
  }
  searched = true;
  std::vector<std::uint64_t> alpha(ends.size(), 0);
  while (true) {
    BigInt s = 0;
    for (std::size_t i = 0; i < ends.size(); ++i) s += m(v, ends[i]) * alpha[i];
    if (s == m(v, v)) {
      MonomialCycle d;
      for (std::size_t i = 0; i < ends.size(); ++i)
        if (alpha[i]) d.alpha[g.id(ends[i])] = alpha[i];
      if (is_admissible(g, m, v, branch, d)) return true;
    }
    std::size_t i = 0;
    while (i < alpha.size() && alpha[i] == hi[i]) alpha[i++] = 0;
    if (i == alpha.size()) return false;
    ++alpha[i];
  }
}

}  // namespace

TEST(LeadingForm, Brieskorn237) {
  auto g = load_graph("brieskorn-2_3_7");
  // weights at the node: z_a01 -> 21, z_a02 -> 14, z_a03 -> 6
  auto f = z({{"a01_001", 2}}) + z({{"a02_001", 3}}, -1) + z({{"a03_001", 7}}, 5) + z({{"a01_001", 1}, {"a02_001", 1}, {"a03_001", 1}});
  auto lf = v_order_leading_form(f, g, "c");
  EXPECT_EQ(lf.order, 41);
  EXPECT_EQ(lf.leading, z({{"a01_001", 1}, {"a02_001", 1}, {"a03_001", 1}}));

  auto h = z({{"a01_001", 2}}) + z({{"a02_001", 3}}, -1) + z({{"a03_001", 7}}, 5);
  auto lh = v_order_leading_form(h, g, "c");
  EXPECT_EQ(lh.order, 42);
  EXPECT_EQ(lh.leading, h);
}

TEST(LeadingForm, AtAnEnd) {
  // seen from the -7 leaf the weights change and z_a03 dominates
  auto g = load_graph("brieskorn-2_3_7");
  auto row = m_row(g, "a03_001");
  auto f = z({{"a01_001", 2}}) + z({{"a03_001", 1}});
  auto lf = v_order_leading_form(f, g, "a03_001");
  BigInt o1 = row[g.index("a01_001")] * 2, o2 = row[g.index("a03_001")];
  EXPECT_EQ(lf.order, std::min(o1, o2));
}

TEST(LeadingForm, Errors) {
  auto g = load_graph("brieskorn-2_3_7");
  EXPECT_EQ(code_of([&] { v_order_leading_form(z({{"c", 1}}), g, "c"); }), ErrorCode::UnknownVariable);
  EXPECT_EQ(code_of([&] { v_order_leading_form(z({{"nope", 1}}), g, "c"); }), ErrorCode::UnknownVariable);
  EXPECT_EQ(code_of([&] { v_order_leading_form(WeightedPolynomial(), g, "c"); }), ErrorCode::InvalidArgument);
}

TEST(LeadingForm, ProductIsMultiplicative) {
  auto g = load_graph("splice-2_3_7--2_3_11");
  std::vector<VertexId> ends;
  for (auto e : ends_of(g)) ends.push_back(g.id(e));
  std::mt19937_64 rng(seed() ^ 0x1ea0ULL);
  std::uniform_int_distribution<int> exp(0, 4), coef(-5, 5), count(1, 4), pick(0, static_cast<int>(ends.size()) - 1);
  auto random_poly = [&] {
    WeightedPolynomial p;
    while (p.is_zero()) {
      for (int t = count(rng); t > 0; --t) {
        Monomial m;
        for (int k = count(rng); k > 0; --k) m[ends[pick(rng)]] += exp(rng);
        p.add_term(m, coef(rng));
      }
    }
    return p;
  };
  for (int t = 0; t < 50; ++t) {
    auto f = random_poly(), h = random_poly();
    for (const char* v : {"v1", "v2"}) {
      auto lf = v_order_leading_form(f, g, v), lh = v_order_leading_form(h, g, v);
      auto lp = v_order_leading_form(f * h, g, v);
      EXPECT_EQ(lp.order, lf.order + lh.order) << f.to_string() << " * " << h.to_string();
      EXPECT_EQ(lp.leading, lf.leading * lh.leading) << f.to_string() << " * " << h.to_string();
    }
  }
}

TEST(WeightedPolynomial, Arithmetic) {
  auto a = z({{"x", 1}}) + z({{"y", 2}}, 3);
  auto b = z({{"x", 1}}, -1);
  EXPECT_EQ((a + b).to_string(), "3*z_y^2");
  EXPECT_EQ((a * b).to_string(), "-3*z_x*z_y^2 - 1*z_x^2");
  EXPECT_TRUE((b + z({{"x", 1}})).is_zero());
  EXPECT_EQ(WeightedPolynomial().to_string(), "0");
}

TEST(AdmissibleMonomial, MinusTwoLeafOfBrieskorn237) {
  auto g = load_graph("brieskorn-2_3_7");
  auto d = find_admissible_monomial(g, "c", "a01_001");
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(monomial_to_string(d->monomial()), "z_a01_001^2");
  auto d3 = find_admissible_monomial(g, "c", "a02_001");
  ASSERT_TRUE(d3.has_value());
  EXPECT_EQ(monomial_to_string(d3->monomial()), "z_a02_001^3");
  auto d7 = find_admissible_monomial(g, "c", "a03_001");
  ASSERT_TRUE(d7.has_value());
  EXPECT_EQ(monomial_to_string(d7->monomial()), "z_a03_001^7");
}

TEST(AdmissibleMonomial, FailureFixture) {
  auto g = load_graph("failure-2_3_7--13_3_5");
  EXPECT_FALSE(find_admissible_monomial(g, "v1", "v2").has_value());
  EXPECT_TRUE(find_admissible_monomial(g, "v1", "a1").has_value());
  EXPECT_TRUE(find_admissible_monomial(g, "v2", "v1").has_value());
}

TEST(AdmissibleMonomial, Errors) {
  auto g = load_graph("brieskorn-2_3_7");
  EXPECT_EQ(code_of([&] { find_admissible_monomial(g, "a01_001", "c"); }), ErrorCode::NotANode);
  auto two = load_graph("splice-2_3_7--2_3_11");
  EXPECT_EQ(code_of([&] { find_admissible_monomial(two, "v1", "v2"); }), ErrorCode::NotABranch);
  EXPECT_EQ(code_of([&] { find_admissible_monomial(two, "v1", "b1"); }), ErrorCode::NotABranch);
}

TEST(MonomialCondition, MatchesFixtures) {
  for (const auto& name : corpus_names()) {
    auto g = load_graph(name);
    auto want = expected(name);
    auto r = check_monomial_condition(g);
    EXPECT_EQ(r.satisfied, want["monomial_condition"].get<bool>()) << name;
    std::vector<std::pair<std::string, std::string>> got, exp;
    for (const auto& c : r.certificates)
      if (!c.monomial) got.emplace_back(c.node, c.branch);
    for (const auto& f : want["monomial_failures"]) exp.emplace_back(f["node"], f["branch"]);
    EXPECT_EQ(got, exp) << name;
    ASSERT_EQ(r.notes.size(), 1u);
  }
}

TEST(MonomialCondition, CertificatesVerify) {
  for (const auto& name : corpus_names()) {
    auto g = load_graph(name);
    auto m = m_matrix(g);
    auto r = check_monomial_condition(g, m);
    std::size_t expected_count = 0;
    for (auto v : nodes_of(g)) expected_count += g.degree(v);
    EXPECT_EQ(r.certificates.size(), expected_count) << name;
    for (const auto& c : r.certificates) {
      const std::size_t v = g.index(c.node), u = g.index(c.branch);
      EXPECT_EQ(c.target, m(v, v));
      ASSERT_EQ(c.ends.size(), c.end_weights.size());
      for (std::size_t i = 0; i < c.ends.size(); ++i) EXPECT_EQ(c.end_weights[i], m(v, g.index(c.ends[i])));
      if (c.monomial) {
        EXPECT_FALSE(c.exhausted);
        BigInt s = 0;
        for (const auto& [w, e] : c.monomial->alpha) s += m(v, g.index(w)) * e;
        EXPECT_EQ(s, c.target) << name << " " << c.node << "/" << c.branch;
        EXPECT_TRUE(is_admissible(g, m, v, branch_vertices(g, v, u), *c.monomial)) << name;
      } else {
        EXPECT_TRUE(c.exhausted) << name;
        EXPECT_FALSE(c.ends.empty());
      }
    }
  }
}

// The knapsack search against a plain box enumeration wherever the box is small.
TEST(MonomialCondition, AgreesWithBoxEnumeration) {
  int compared = 0;
  for (const auto& name : corpus_names()) {
    auto g = load_graph(name);
    auto m = m_matrix(g);
    for (const auto& c : check_monomial_condition(g, m).certificates) {
      bool searched = false;
      const std::size_t v = g.index(c.node), u = g.index(c.branch);
      bool found = brute_force_admissible(g, m, v, u, 2'000'000, searched);
      if (!searched) continue;
      EXPECT_EQ(found, c.monomial.has_value()) << name << " " << c.node << "/" << c.branch;
      ++compared;
    }
  }
  EXPECT_GT(compared, 20);
}

TEST(MonomialCondition, NotZhs) {
  EXPECT_EQ(code_of([] { check_monomial_condition(parse_graph("vertex a -2\nvertex b -2\nedge a b\n")); }),
            ErrorCode::NotZHS);
}

TEST(Vandermonde, MinorsNonzero) {
  for (std::size_t delta = 3; delta <= 7; ++delta) {
    auto f = vandermonde_coefficients(delta);
    EXPECT_EQ(f.rows(), delta - 2);
    EXPECT_EQ(f.cols(), delta);
    EXPECT_TRUE(maximal_minors_nonzero(f)) << delta;
  }
  IntegerMatrix bad(1, 3);
  bad(0, 0) = 1;
  bad(0, 1) = 0;
  bad(0, 2) = 2;
  EXPECT_FALSE(maximal_minors_nonzero(bad));
  IntegerMatrix two(2, 4);
  for (std::size_t j = 0; j < 4; ++j) {
    two(0, j) = 1;
    two(1, j) = j < 2 ? 5 : j;
  }
  // columns 0 and 1 coincide
  EXPECT_FALSE(maximal_minors_nonzero(two));
}

TEST(SpliceEquations, Counts) {
  auto b = generate_splice_equations(load_graph("brieskorn-2_3_7"));
  EXPECT_EQ(b.equation_count(), 1u);
  EXPECT_EQ(b.variables.size(), 3u);
  EXPECT_EQ(b.nodes[0].equations[0].to_string(), "1*z_a01_001^2 + 1*z_a02_001^3 + 1*z_a03_001^7");

  auto e8 = generate_splice_equations(load_graph("e8"));
  EXPECT_EQ(e8.equation_count(), 1u);
  EXPECT_EQ(e8.variables.size(), 3u);

  auto two = generate_splice_equations(load_graph("splice-2_3_7--2_3_11"));
  EXPECT_EQ(two.equation_count(), 2u);
  EXPECT_EQ(two.variables.size(), 4u);
  EXPECT_EQ(two.to_text().substr(0, 28), "# 2 equations in 4 variables");

  auto it = generate_splice_equations(load_graph("iterated-2_5_13--2_7_11--2_3_19"));
  EXPECT_EQ(it.equation_count() + 2, it.variables.size());
}

TEST(SpliceEquations, QuasihomogeneousAtEachNode) {
  for (const auto& name : corpus_names()) {
    if (!expected(name)["monomial_condition"].get<bool>()) continue;
    auto g = load_graph(name);
    auto sys = generate_splice_equations(g);
    for (const auto& ne : sys.nodes) {
      auto row = m_row(g, ne.node);
      for (const auto& f : ne.equations) {
        auto lf = v_order_leading_form(f, g, ne.node);
        EXPECT_EQ(lf.order, row[g.index(ne.node)]) << name;
        EXPECT_EQ(lf.leading, f) << name;
        EXPECT_EQ(f.terms().size(), g.degree(g.index(ne.node))) << name;
      }
    }
  }
}

TEST(SpliceEquations, Errors) {
  EXPECT_EQ(code_of([] { generate_splice_equations(load_graph("failure-2_3_7--13_3_5")); }),
            ErrorCode::MonomialConditionFailed);
  auto g = load_graph("brieskorn-2_3_7");
  std::map<VertexId, IntegerMatrix> coeffs;
  IntegerMatrix bad(1, 3);
  bad(0, 0) = 1;
  bad(0, 1) = 0;
  bad(0, 2) = 1;
  coeffs["c"] = bad;
  EXPECT_EQ(code_of([&] { generate_splice_equations(g, &coeffs); }), ErrorCode::DegenerateMinors);
  coeffs["c"] = IntegerMatrix(2, 3);
  EXPECT_EQ(code_of([&] { generate_splice_equations(g, &coeffs); }), ErrorCode::InvalidArgument);
  IntegerMatrix ok(1, 3);
  ok(0, 0) = 2;
  ok(0, 1) = -3;
  ok(0, 2) = 7;
  coeffs["c"] = ok;
  EXPECT_EQ(generate_splice_equations(g, &coeffs).nodes[0].equations[0].to_string(),
            "2*z_a01_001^2 - 3*z_a02_001^3 + 7*z_a03_001^7");
}
