#pragma once

// Monomial cycles, v-weighted leading forms, the monomial condition and the
// splice diagram equations built from admissible monomials.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "splicetype/graph.hpp"

namespace splicetype {

// Exponents of the end variables z_w; zero exponents are never stored.
using Monomial = std::map<VertexId, std::uint64_t>;

inline std::string monomial_to_string(const Monomial& m) {
  if (m.empty()) return "1";
  std::string s;
  for (const auto& [w, e] : m) {
    if (!s.empty()) s += "*";
    s += "z_" + w;
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

class WeightedPolynomial {
 public:
  WeightedPolynomial() = default;

  static WeightedPolynomial monomial(Monomial m, BigInt c = 1) {
    WeightedPolynomial p;
    p.add_term(std::move(m), std::move(c));
    return p;
  }

  void add_term(Monomial m, const BigInt& c) {
    for (auto it = m.begin(); it != m.end();) it = it->second == 0 ? m.erase(it) : std::next(it);
    if (c == 0) return;
    auto& slot = terms_[std::move(m)];
    slot += c;
    if (slot == 0) erase_zeros();
  }

  const std::map<Monomial, BigInt>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  friend WeightedPolynomial operator+(WeightedPolynomial a, const WeightedPolynomial& b) {
    for (const auto& [m, c] : b.terms_) a.add_term(m, c);
    return a;
  }

  friend WeightedPolynomial operator*(const WeightedPolynomial& a, const WeightedPolynomial& b) {
    WeightedPolynomial out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m = ma;
        for (const auto& [w, e] : mb) m[w] += e;
        out.add_term(std::move(m), ca * cb);
      }
    return out;
  }

  friend bool operator==(const WeightedPolynomial&, const WeightedPolynomial&) = default;

  // "c*z_a^2*z_b + ..." with every coefficient written out.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
      if (s.empty()) {
        if (c < 0) s += "-";
      } else {
        s += c < 0 ? " - " : " + ";
      }
      s += abs(c).str();
      if (!m.empty()) s += "*" + monomial_to_string(m);
    }
    return s;
  }

 private:
  void erase_zeros() {
    for (auto it = terms_.begin(); it != terms_.end();) it = it->second == 0 ? terms_.erase(it) : std::next(it);
  }
  std::map<Monomial, BigInt> terms_;
};

struct LeadingForm {
  BigInt order;
  WeightedPolynomial leading;
};

namespace detail {

inline BigInt weighted_degree(const PlumbingGraph& g, std::span<const BigInt> row, const Monomial& m) {
  BigInt d = 0;
  for (const auto& [w, e] : m) {
    auto i = g.index_of(w);
    if (!i || g.degree(*i) != 1) throw Error(ErrorCode::UnknownVariable, "z_" + w + " is not an end variable");
    d += row[*i] * e;
  }
  return d;
}

}  // namespace detail

// z_w carries weight m_vw; the leading form collects the terms of least weight.
inline LeadingForm v_order_leading_form(const WeightedPolynomial& f, const PlumbingGraph& g, const VertexId& v) {
  if (f.is_zero()) throw Error(ErrorCode::InvalidArgument, "the zero polynomial has no leading form");
  auto row = m_row(g, v);
  LeadingForm lf;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    BigInt d = detail::weighted_degree(g, row, m);
    if (first || d < lf.order) {
      lf.order = d;
      lf.leading = WeightedPolynomial();
      first = false;
    }
    if (d == lf.order) lf.leading.add_term(m, c);
  }
  return lf;
}

// ---------------------------------------------------------------------------
// Monomial cycles

struct MonomialCycle {
  std::map<VertexId, std::uint64_t> alpha;  // end -> exponent

  Monomial monomial() const {
    Monomial m;
    for (const auto& [w, e] : alpha)
      if (e != 0) m[w] = e;
    return m;
  }

  std::uint64_t total_degree() const {
    std::uint64_t t = 0;
    for (const auto& [w, e] : alpha) t += e;
    return t;
  }

  // sum alpha_w E*_w
  Cycle cycle(const PlumbingGraph& g, const MMatrix& m) const {
    std::vector<BigInt> c(g.size(), 0);
    for (const auto& [w, e] : alpha) {
      std::size_t wi = g.index(w);
      for (std::size_t u = 0; u < g.size(); ++u) c[u] += m(wi, u) * e;
    }
    return Cycle::from_integers(c);
  }

  friend bool operator==(const MonomialCycle&, const MonomialCycle&) = default;
};

// Whether D - E*_v is effective and vanishes off the branch.
inline bool is_admissible(const PlumbingGraph& g, const MMatrix& m, std::size_t v,
                          const std::vector<std::size_t>& branch, const MonomialCycle& d) {
  Cycle diff = d.cycle(g, m) - Cycle::from_integers(m.row(v));
  std::vector<char> in(g.size(), 0);
  for (auto u : branch) in[u] = 1;
  for (std::size_t u = 0; u < g.size(); ++u) {
    if (diff[u] < 0) return false;
    if (!in[u] && diff[u] != 0) return false;
  }
  return true;
}

struct BranchCertificate {
  VertexId node;
  VertexId branch;                  // neighbor of the node inside the branch
  BigInt target;                    // m_vv
  std::vector<VertexId> ends;       // ends of the branch
  std::vector<BigInt> end_weights;  // m_vw for those ends
  std::optional<MonomialCycle> monomial;
  bool exhausted = false;           // the whole knapsack space was searched
};

namespace detail {

class KnapsackSearch {
 public:
  KnapsackSearch(std::vector<std::uint64_t> weights, std::uint64_t target)
      : w_(std::move(weights)), target_(target) {}

  static constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

  // Fewest items summing to r with weights w_[i..]; kNone if impossible.
  std::uint64_t fewest(std::size_t i, std::uint64_t r) {
    if (i == w_.size()) return r == 0 ? 0 : kNone;
    if (i + 1 == w_.size()) return r % w_[i] == 0 ? r / w_[i] : kNone;
    const std::uint64_t key = r * (w_.size() + 1) + i;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::uint64_t best = kNone;
    for (std::uint64_t k = 0; k * w_[i] <= r; ++k) {
      std::uint64_t rest = fewest(i + 1, r - k * w_[i]);
      if (rest != kNone) best = std::min(best, k + rest);
    }
    memo_.emplace(key, best);
    return best;
  }

  // Lexicographically smallest solution among those with the fewest items.
  std::optional<std::vector<std::uint64_t>> best() {
    if (fewest(0, target_) == kNone) return std::nullopt;
    std::vector<std::uint64_t> alpha(w_.size(), 0);
    std::uint64_t r = target_;
    for (std::size_t i = 0; i < w_.size(); ++i) {
      const std::uint64_t need = fewest(i, r);
      for (std::uint64_t k = 0; k * w_[i] <= r; ++k) {
        std::uint64_t rest = fewest(i + 1, r - k * w_[i]);
        if (rest != kNone && k + rest == need) {
          alpha[i] = k;
          r -= k * w_[i];
          break;
        }
      }
    }
    return alpha;
  }

  // Visits every solution in lexicographic order until visit returns true.
  template <typename Visit>
  bool enumerate(Visit&& visit) {
    std::vector<std::uint64_t> alpha(w_.size(), 0);
    return enumerate_from(0, target_, alpha, visit);
  }

 private:
  template <typename Visit>
  bool enumerate_from(std::size_t i, std::uint64_t r, std::vector<std::uint64_t>& alpha, Visit& visit) {
    if (i == w_.size()) return r == 0 && visit(alpha);
    if (fewest(i, r) == kNone) return false;
    for (std::uint64_t k = 0; k * w_[i] <= r; ++k) {
      alpha[i] = k;
      if (enumerate_from(i + 1, r - k * w_[i], alpha, visit)) return true;
    }
    alpha[i] = 0;
    return false;
  }

  std::vector<std::uint64_t> w_;
  std::uint64_t target_;
  std::unordered_map<std::uint64_t, std::uint64_t> memo_;
};

inline BranchCertificate search_branch(const PlumbingGraph& g, const MMatrix& m, std::size_t v, std::size_t u) {
  BranchCertificate cert;
  cert.node = g.id(v);
  cert.branch = g.id(u);
  cert.target = m(v, v);
  auto branch = branch_vertices(g, v, u);
  std::vector<std::uint64_t> weights;
  for (std::size_t x : branch) {
    if (g.degree(x) != 1) continue;
    cert.ends.push_back(g.id(x));
    cert.end_weights.push_back(m(v, x));
    weights.push_back(to_uint64(m(v, x), "m-matrix entry"));
  }
  KnapsackSearch search(weights, to_uint64(cert.target, "m-matrix entry"));
  auto make = [&](const std::vector<std::uint64_t>& alpha) {
    MonomialCycle d;
    for (std::size_t i = 0; i < alpha.size(); ++i)
      if (alpha[i] != 0) d.alpha[cert.ends[i]] = alpha[i];
    return d;
  };
  if (auto alpha = search.best()) {
    MonomialCycle d = make(*alpha);
    if (is_admissible(g, m, v, branch, d)) {
      cert.monomial = d;
      return cert;
    }
    search.enumerate([&](const std::vector<std::uint64_t>& a) {
      MonomialCycle cand = make(a);
      if (!is_admissible(g, m, v, branch, cand)) return false;
      cert.monomial = cand;
      return true;
    });
  }
  cert.exhausted = !cert.monomial.has_value();
  return cert;
}

}  // namespace detail

// An admissible monomial for the branch of v through its neighbor `branch`.
inline std::optional<MonomialCycle> find_admissible_monomial(const PlumbingGraph& g, const VertexId& v,
                                                             const VertexId& branch) {
  const std::size_t vi = g.index(v);
  if (g.degree(vi) < 3) throw Error(ErrorCode::NotANode, v + " is not a node");
  const std::size_t ui = g.index(branch);
  if (!g.adjacent(vi, ui)) throw Error(ErrorCode::NotABranch, branch + " is not adjacent to " + v);
  return detail::search_branch(g, m_matrix(g), vi, ui).monomial;
}

struct MonomialConditionReport {
  bool satisfied = true;
  std::vector<BranchCertificate> certificates;  // one per (node, branch)
  std::vector<std::string> notes;

  const BranchCertificate* first_failure() const {
    for (const auto& c : certificates)
      if (!c.monomial) return &c;
    return nullptr;
  }
};

inline constexpr const char* kCongruenceNote =
    "congruence condition not checked: it holds automatically for integral homology sphere links";

inline MonomialConditionReport check_monomial_condition(const PlumbingGraph& g, const MMatrix& m) {
  MonomialConditionReport r;
  r.notes.push_back(kCongruenceNote);
  for (std::size_t v : nodes_of(g)) {
    for (std::size_t u : g.neighbors(v)) {
      r.certificates.push_back(detail::search_branch(g, m, v, u));
      if (!r.certificates.back().monomial) r.satisfied = false;
    }
  }
  return r;
}

inline MonomialConditionReport check_monomial_condition(const PlumbingGraph& g) {
  if (!certify_zhs(g).is_zhs) throw Error(ErrorCode::NotZHS, "the monomial condition is checked on unimodular negative-definite trees");
  return check_monomial_condition(g, m_matrix(g));
}

// ---------------------------------------------------------------------------
// Splice diagram equations

struct NodeEquations {
  VertexId node;
  std::vector<VertexId> branches;        // neighbor of the node in each branch
  std::vector<MonomialCycle> monomials;  // admissible monomial per branch
  IntegerMatrix coefficients;            // (delta - 2) x delta
  std::vector<WeightedPolynomial> equations;
};

struct EquationSystem {
  std::vector<VertexId> variables;  // ends, canonical order
  std::vector<NodeEquations> nodes;

  std::size_t equation_count() const {
    std::size_t n = 0;
    for (const auto& ne : nodes) n += ne.equations.size();
    return n;
  }

  std::string to_text() const {
    std::string s = "# " + std::to_string(equation_count()) + " equations in " + std::to_string(variables.size()) +
                    " variables\nvariables:";
    for (const auto& v : variables) s += " z_" + v;
    s += "\n";
    for (const auto& ne : nodes)
      for (std::size_t j = 0; j < ne.equations.size(); ++j)
        s += "f_" + ne.node + "_" + std::to_string(j + 1) + " = " + ne.equations[j].to_string() + "\n";
    return s;
  }
};

// Rows x_j^i for x_j = 1..delta, i = 0..delta-3.
inline IntegerMatrix vandermonde_coefficients(std::size_t delta) {
  IntegerMatrix f(delta - 2, delta);
  for (std::size_t i = 0; i + 2 < delta; ++i)
    for (std::size_t j = 0; j < delta; ++j) f(i, j) = boost::multiprecision::pow(BigInt(j + 1), static_cast<unsigned>(i));
  return f;
}

// True when every maximal minor is nonzero.
inline bool maximal_minors_nonzero(const IntegerMatrix& f) {
  const std::size_t rows = f.rows(), cols = f.cols();
  if (rows > cols) return false;
  std::vector<std::size_t> pick(rows);
  for (std::size_t i = 0; i < rows; ++i) pick[i] = i;
  while (true) {
    if (determinant(f.select_columns(pick)) == 0) return false;
    std::size_t i = rows;
    while (i > 0 && pick[i - 1] == cols - rows + i - 1) --i;
    if (i == 0) return true;
    ++pick[i - 1];
    for (std::size_t j = i; j < rows; ++j) pick[j] = pick[j - 1] + 1;
  }
}

inline EquationSystem generate_splice_equations(const PlumbingGraph& g,
                                                const std::map<VertexId, IntegerMatrix>* coefficients = nullptr) {
  if (!certify_zhs(g).is_zhs) throw Error(ErrorCode::NotZHS, "splice equations need a unimodular negative-definite tree");
  auto m = m_matrix(g);
  auto report = check_monomial_condition(g, m);
  if (!report.satisfied) {
    const auto* f = report.first_failure();
    throw Error(ErrorCode::MonomialConditionFailed,
                "no admissible monomial at node " + f->node + " for the branch through " + f->branch);
  }
  EquationSystem sys;
  for (std::size_t e : ends_of(g)) sys.variables.push_back(g.id(e));

  std::size_t k = 0;
  for (std::size_t v : nodes_of(g)) {
    NodeEquations ne;
    ne.node = g.id(v);
    const std::size_t delta = g.degree(v);
    for (std::size_t u : g.neighbors(v)) {
      const auto& cert = report.certificates.at(k++);
      ensure(cert.node == ne.node && cert.branch == g.id(u), "certificate order mismatch");
      ne.branches.push_back(g.id(u));
      ne.monomials.push_back(*cert.monomial);
    }
    if (coefficients && coefficients->count(ne.node)) {
      ne.coefficients = coefficients->at(ne.node);
      if (ne.coefficients.rows() != delta - 2 || ne.coefficients.cols() != delta)
        throw Error(ErrorCode::InvalidArgument, "coefficient matrix for " + ne.node + " must be " +
                                                    std::to_string(delta - 2) + "x" + std::to_string(delta));
    } else {
      ne.coefficients = vandermonde_coefficients(delta);
    }
    if (!maximal_minors_nonzero(ne.coefficients))
      throw Error(ErrorCode::DegenerateMinors, "coefficient matrix for " + ne.node + " has a vanishing maximal minor");
    for (std::size_t i = 0; i + 2 < delta; ++i) {
      WeightedPolynomial f;
      for (std::size_t j = 0; j < delta; ++j) f.add_term(ne.monomials[j].monomial(), ne.coefficients(i, j));
      auto lf = v_order_leading_form(f, g, ne.node);
      ensure(lf.leading == f && lf.order == m(v, v), "splice equation at " + ne.node + " is not quasihomogeneous");
      ne.equations.push_back(std::move(f));
    }
    sys.nodes.push_back(std::move(ne));
  }
  ensure(sys.equation_count() + 2 == sys.variables.size() || nodes_of(g).empty(),
         "equation count differs from #ends - 2");
  return sys;
}

}  // namespace splicetype
