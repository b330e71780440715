#include <gtest/gtest.h>

#include "support/corpus.hpp"

using namespace splicetype;
using namespace splicetype::testing;

namespace {

PlumbingGraph graph(const std::string& text) { return parse_graph(text); }

BigInt abs_det(const PlumbingGraph& g) { return abs(forest_determinant(g, detail::full_mask(g))); }

std::vector<BigInt> cf(std::int64_t a, std::int64_t b) { return continued_fraction(a, b).coefficients; }

std::vector<BigInt> bigs(std::initializer_list<int> xs) { return {xs.begin(), xs.end()}; }

}  // namespace

TEST(ContinuedFraction, Examples) {
  EXPECT_EQ(cf(9, 1), bigs({9}));
  EXPECT_EQ(cf(7, 3), bigs({3, 2, 2}));
  EXPECT_EQ(cf(6, 7), bigs({1, 7}));
  EXPECT_EQ(cf(11, 9), bigs({2, 2, 2, 2, 3}));
}

TEST(ContinuedFraction, NotCoprime) {
  EXPECT_THROW(continued_fraction(6, 4), Error);
  try {
    continued_fraction(6, 4);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCoprime);
  }
}

TEST(ContinuedFraction, RoundTripUpTo200) {
  for (int a = 2; a <= 200; ++a) {
    for (int b = 1; b < a; ++b) {
      if (std::gcd(a, b) != 1) continue;
      auto c = continued_fraction(a, b);
      ASSERT_EQ(c.value(), make_rational(a, b)) << a << "/" << b;
      ASSERT_GE(c.coefficients[0], 1);
      for (std::size_t i = 1; i < c.coefficients.size(); ++i) ASSERT_GE(c.coefficients[i], 2);
    }
  }
}

TEST(BlowDown, Examples) {
  auto empty = blow_down(graph("vertex a -1\n"), "a");
  EXPECT_TRUE(empty.empty());

  auto g = graph("vertex a -2\nvertex b -1\nvertex c -3\nedge a b\nedge b c\n");
  auto h = blow_down(g, "b");
  EXPECT_EQ(print_graph(h), "vertex a -1\nvertex c -2\nedge a c\n");
}

TEST(BlowDown, PreservesDeterminant) {
  auto g = graph("vertex a -2\nvertex b -1\nvertex c -3\nvertex p -5\nedge a b\nedge b c\nedge c p\n");
  EXPECT_EQ(abs_det(blow_down(g, "b")), abs_det(g));
}

TEST(BlowDown, Rejects) {
  auto g = graph("vertex a -2\nvertex b -1\nvertex c -3\nvertex d -2\nedge a b\nedge b c\nedge b d\n");
  try {
    blow_down(g, "b");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotBlowdownable);
  }
  EXPECT_THROW(blow_down(g, "a"), Error);
}

TEST(ZeroAbsorption, Examples) {
  auto g = graph("vertex a -2\nvertex z 0\nvertex b -3\nedge a z\nedge z b\n");
  EXPECT_EQ(print_graph(zero_absorption(g, "z")), "vertex a -5\n");

  auto h = graph("vertex a -2\nvertex z 0\nvertex b -3\nvertex p -5\nedge a z\nedge z b\nedge b p\n");
  auto r = zero_absorption(h, "z");
  EXPECT_EQ(print_graph(r), "vertex a -5\nvertex p -5\nedge a p\n");
  EXPECT_EQ(abs_det(r), abs_det(h));
}

TEST(ZeroAbsorption, RejectsValenceThree) {
  auto g = graph("vertex z 0\nvertex a -2\nvertex b -2\nvertex c -2\nedge z a\nedge z b\nedge z c\n");
  try {
    zero_absorption(g, "z");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAbsorbable);
  }
}

TEST(MinimalModel, E8Unchanged) {
  auto g = load_graph("e8");
  std::vector<CalculusMove> moves;
  auto m = minimal_model(g, &moves);
  EXPECT_TRUE(moves.empty());
  EXPECT_EQ(print_graph(m), print_graph(g));
}

TEST(MinimalModel, ChainWithMinusOnes) {
  // [3, 2, 2] realizes 7/3; a (-1) in the middle splits it into two chains.
  auto g = graph("vertex a -3\nvertex b -1\nvertex c -2\nvertex d -2\nedge a b\nedge b c\nedge c d\n");
  std::vector<CalculusMove> moves;
  auto m = minimal_model(g, &moves);
  EXPECT_FALSE(moves.empty());
  EXPECT_FALSE(first_applicable_move(m).has_value());
  EXPECT_EQ(abs_det(m), abs_det(g));
  // every intermediate step preserves |det|
  PlumbingGraph cur = g;
  for (const auto& mv : moves) {
    auto next = apply_move(cur, mv);
    EXPECT_EQ(abs_det(next), abs_det(cur));
    cur = next;
  }
}

TEST(MinimalModel, CorpusDiagramsUnchanged) {
  for (const auto& name : corpus_names()) {
    auto g = load_graph(name);
    EXPECT_EQ(splice_diagram(minimal_model(g)).canonical_form(), splice_diagram(g).canonical_form()) << name;
  }
}

TEST(SeifertStar, E8) {
  auto g = seifert_star(bigs({2, 3, 5}));
  EXPECT_EQ(print_graph(g), print_graph(load_graph("e8")));
  EXPECT_EQ(g.weight(g.index("c")), -2);
}

TEST(SeifertStar, Brieskorn237) {
  auto g = seifert_star(bigs({2, 3, 7}));
  EXPECT_EQ(g.size(), 4u);
  EXPECT_EQ(g.weight(g.index("c")), -1);
  std::vector<std::int64_t> leaves;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (g.degree(v) == 1) leaves.push_back(g.weight(v));
  std::sort(leaves.begin(), leaves.end());
  EXPECT_EQ(leaves, (std::vector<std::int64_t>{-7, -3, -2}));
}

TEST(SeifertStar, Brieskorn2311) {
  auto g = seifert_star(bigs({2, 3, 11}));
  EXPECT_EQ(g.weight(g.index("c")), -2);
  EXPECT_EQ(g.weight(g.index("a03_005")), -3);
  EXPECT_EQ(g.size(), 9u);
}

TEST(SeifertStar, NotCoprime) {
  try {
    seifert_star(bigs({2, 4, 5}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCoprime);
  }
}

TEST(SeifertStar, DiagramRoundTripForTriplesUpTo30) {
  int checked = 0;
  for (int a = 2; a <= 30; ++a)
    for (int b = a + 1; b <= 30; ++b)
      for (int c = b + 1; c <= 30; ++c) {
        if (std::gcd(a, b) != 1 || std::gcd(a, c) != 1 || std::gcd(b, c) != 1) continue;
        auto g = seifert_star(bigs({a, b, c}));
        ASSERT_TRUE(certify_zhs(g).is_zhs) << a << "," << b << "," << c;
        auto d = splice_diagram(g);
        ASSERT_EQ(d.nodes().size(), 1u);
        ASSERT_EQ(d.node_weights(d.nodes()[0]), bigs({a, b, c}));
        ++checked;
      }
  EXPECT_GT(checked, 1000);
}

TEST(SeifertStar, FourArms) {
  auto g = seifert_star(bigs({2, 3, 5, 7}));
  EXPECT_TRUE(certify_zhs(g).is_zhs);
  auto d = splice_diagram(g);
  EXPECT_EQ(d.node_weights(d.nodes()[0]), bigs({2, 3, 5, 7}));
}

TEST(TildeGamma2, TwoNodeFixture) {
  auto g = load_graph("splice-2_3_7--2_3_11");
  auto s = split_at_end_node(g);
  ASSERT_EQ(s.a, 6);
  ASSERT_EQ(s.b, 7);
  const auto& t = s.tilde_gamma2;
  EXPECT_EQ(t.graph.weight(t.graph.index(t.junction)), -1);
  // 6/5 = [2,2,2,2,2]: five (-2)-curves ahead of the junction
  ASSERT_EQ(t.chain.size(), 5u);
  for (const auto& id : t.chain) EXPECT_EQ(t.graph.weight(t.graph.index(id)), -2);
  EXPECT_TRUE(certify_zhs(t.graph).is_zhs);
  auto m = minimal_model(t.graph);
  auto d = splice_diagram(m);
  ASSERT_EQ(d.nodes().size(), 1u);
  EXPECT_EQ(d.node_weights(d.nodes()[0]), bigs({2, 3, 11}));
}

TEST(TildeGamma2, UnimodularOnCorpus) {
  for (const auto& name : corpus_names()) {
    auto g = load_graph(name);
    if (nodes_of(g).size() < 2) continue;
    auto s = split_at_end_node(g);
    auto c = certify_zhs(s.tilde_gamma2.graph);
    EXPECT_TRUE(c.negative_definite) << name;
    EXPECT_EQ(abs(c.det), 1) << name;
    EXPECT_TRUE(certify_zhs(minimal_model(s.tilde_gamma2.graph)).is_zhs) << name;
  }
}

TEST(TildeGamma2, Errors) {
  auto gp = parse_graph("vertex w -7\n");
  auto code = [&](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvariantViolation;
  };
  EXPECT_EQ(code([&] { build_tilde_gamma2(gp, "w", 14, 7); }), ErrorCode::NotCoprime);
  EXPECT_EQ(code([&] { build_tilde_gamma2(gp, "x", 6, 7); }), ErrorCode::InvalidAttachment);
  EXPECT_EQ(code([&] { build_tilde_gamma2(gp, "w", 6, 5); }), ErrorCode::InvalidAttachment);
  auto ok = build_tilde_gamma2(gp, "w", 6, 7);
  EXPECT_TRUE(certify_zhs(ok.graph).is_zhs);
}

TEST(TildeGamma2, SmallCasesAreUnimodular) {
  // Single-vertex gamma_prime of weight -b, so det(gamma_prime - w) = 1:
  // a completion exists exactly when b divides 1 + a.
  int built = 0;
  for (int b = 2; b <= 25; ++b)
    for (int a = 1; a <= 40; ++a) {
      if (std::gcd(a, b) != 1) continue;
      auto gp = parse_graph("vertex w -" + std::to_string(b) + "\n");
      if ((1 + a) % b != 0) {
        try {
          build_tilde_gamma2(gp, "w", a, b);
          ADD_FAILURE() << a << "/" << b;
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), ErrorCode::InvalidAttachment) << a << "/" << b;
        }
        continue;
      }
      ++built;
      auto t = build_tilde_gamma2(gp, "w", a, b);
      ASSERT_TRUE(certify_zhs(t.graph).is_zhs) << a << "/" << b;
      // the junction sees determinant a on the chain side
      std::vector<std::size_t> chain;
      for (const auto& id : t.chain) chain.push_back(t.graph.index(id));
      std::sort(chain.begin(), chain.end());
      ASSERT_EQ(abs(forest_determinant(t.graph, std::span<const std::size_t>(chain))), a) << a << "/" << b;
    }
  EXPECT_GT(built, 40);
}
