#pragma once

// Geometric genus by the splice recursion, c, signature, Casson invariant,
// the Brieskorn lattice-count oracles and the lambda = sigma/8 verifier.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "splicetype/calculus.hpp"
#include "splicetype/graph.hpp"
#include "splicetype/monomial.hpp"
#include "splicetype/series.hpp"
#include "splicetype/splice_diagram.hpp"

namespace splicetype {

// ---------------------------------------------------------------------------
// Brieskorn oracles: full lattice counts over the box 0 < x_i < a_i.

inline constexpr std::int64_t kOracleBoxLimit = 10'000'000;

namespace detail {

inline void require_brieskorn_triple(std::int64_t a1, std::int64_t a2, std::int64_t a3) {
  for (auto a : {a1, a2, a3})
    if (a < 2) throw Error(ErrorCode::InvalidArgument, "Brieskorn exponents must be >= 2");
  require_pairwise_coprime({a1, a2, a3});
  if (a1 > kOracleBoxLimit / a2 || a1 * a2 > kOracleBoxLimit / a3)
    throw Error(ErrorCode::InputTooLarge, "a1*a2*a3 exceeds " + std::to_string(kOracleBoxLimit));
}

}  // namespace detail

inline BigInt brieskorn_sigma(std::int64_t a1, std::int64_t a2, std::int64_t a3) {
  detail::require_brieskorn_triple(a1, a2, a3);
  // x1/a1 + x2/a2 + x3/a3 = s / A
  const std::int64_t A = a1 * a2 * a3, u1 = A / a1, u2 = A / a2, u3 = A / a3;
  std::int64_t sigma = 0;
  for (std::int64_t x1 = 1; x1 < a1; ++x1)
    for (std::int64_t x2 = 1; x2 < a2; ++x2)
      for (std::int64_t x3 = 1; x3 < a3; ++x3) {
        std::int64_t s = (x1 * u1 + x2 * u2 + x3 * u3) % (2 * A);
        ensure(s % A != 0, "lattice sum is an integer");
        sigma += s < A ? 1 : -1;
      }
  return sigma;
}

inline BigInt brieskorn_pg(std::int64_t a1, std::int64_t a2, std::int64_t a3) {
  detail::require_brieskorn_triple(a1, a2, a3);
  const std::int64_t A = a1 * a2 * a3, u1 = A / a1, u2 = A / a2, u3 = A / a3;
  std::int64_t count = 0;
  for (std::int64_t x1 = 1; x1 * u1 < A; ++x1)
    for (std::int64_t x2 = 1; x1 * u1 + x2 * u2 < A; ++x2)
      for (std::int64_t x3 = 1; x1 * u1 + x2 * u2 + x3 * u3 < A; ++x3) ++count;
  return count;
}

// ---------------------------------------------------------------------------
// Geometric genus

struct SplitStep {
  std::size_t depth = 0;
  VertexId v1, v2;
  std::vector<BigInt> a_i;
  BigInt a, b, c, d;
  IntPolynomial p1, p2;
  BigInt b1_g1, b1_g2;
  BigInt correction;  // b1_g1 * b1_g2 / 4
  BigInt pg_gamma1, pg_gamma2, pg;
  // pc of H at v1 on Gamma, at v1' on tilde Gamma_2, at v1 on Gamma_1
  BigInt pc_gamma, pc_tilde_gamma2, pc_gamma1;
  BigInt pc_difference;  // pc_gamma - pc_tilde_gamma2 - pc_gamma1
  BigInt q_product;      // Q1(1) Q2(1)
  BigInt pg_route2;
};

struct GenusResult {
  BigInt pg;
  std::vector<SplitStep> steps;  // outermost split first
};

namespace detail {

inline BigInt one_node_genus(const PlumbingGraph& g) {
  auto nodes = nodes_of(g);
  ensure(nodes.size() == 1, "expected a single node");
  return periodic_constant(hilbert_series(g, nodes.front()));
}

inline BigInt genus_recursive(const PlumbingGraph& g, std::size_t depth, const std::optional<VertexId>& end_node,
                              std::vector<SplitStep>& steps) {
  auto nodes = nodes_of(g);
  if (nodes.empty()) return 0;
  if (nodes.size() == 1) return one_node_genus(g);

  SpliceSplit s = end_node ? split_at_end_node(g, *end_node) : split_at_end_node(g);
  const std::size_t slot = steps.size();
  steps.emplace_back();
  SplitStep st;
  st.depth = depth;
  st.v1 = s.v1;
  st.v2 = s.v2;
  st.a_i = s.leaf_weights;
  st.a = s.a;
  st.b = s.b;
  st.c = s.c;
  st.d = s.d;

  st.pg_gamma1 = one_node_genus(s.gamma1);
  PlumbingGraph gamma2 = minimal_model(s.tilde_gamma2.graph);
  st.pg_gamma2 = genus_recursive(gamma2, depth + 1, std::nullopt, steps);

  st.p1 = char_poly_node(s.leaf_weights);
  st.p2 = char_poly_side2(s.tilde_gamma2.graph, s.tilde_gamma2.junction, s.a, s.b);
  st.b1_g1 = b1_fiber(st.p1);
  st.b1_g2 = b1_fiber(st.p2);
  ensure((st.b1_g1 * st.b1_g2) % 4 == 0, "b1 product is not divisible by 4");
  st.correction = st.b1_g1 * st.b1_g2 / 4;
  st.pg = st.pg_gamma1 + st.pg_gamma2 + st.correction;

  st.pc_gamma = periodic_constant(hilbert_series(g, s.v1));
  st.pc_tilde_gamma2 = periodic_constant(hilbert_series(s.tilde_gamma2.graph, s.tilde_gamma2.junction));
  st.pc_gamma1 = periodic_constant(hilbert_series(s.gamma1, seifert_center_id()));
  st.pc_difference = st.pc_gamma - st.pc_tilde_gamma2 - st.pc_gamma1;
  // Q_i = (P_i - 1)/(1 - t) has Q_i(1) = P_i'(1).
  st.q_product = st.p1.derivative()(1) * st.p2.derivative()(1);
  st.pg_route2 = st.pg_gamma2 + st.pc_gamma - st.pc_tilde_gamma2;

  ensure(st.pc_gamma1 == st.pg_gamma1, "pc of the star differs from its genus");
  ensure(st.pc_difference == st.correction, "pc difference " + st.pc_difference.str() + " differs from b1 b1 / 4 = " +
                                                st.correction.str() + " at end-node " + st.v1);
  ensure(st.q_product == st.correction, "Q1(1) Q2(1) differs from b1 b1 / 4");
  ensure(st.pg_route2 == st.pg, "the two genus routes disagree at end-node " + st.v1);
  ensure(st.pg >= 0, "negative geometric genus");
  BigInt pg = st.pg;
  steps[slot] = std::move(st);
  return pg;
}

inline void require_splice_type(const PlumbingGraph& g) {
  if (!certify_zhs(g).is_zhs) throw Error(ErrorCode::NotZHS, "graph is not a unimodular negative-definite tree");
  auto report = check_monomial_condition(g);
  if (!report.satisfied) {
    const auto* f = report.first_failure();
    throw Error(ErrorCode::MonomialConditionFailed,
                "no admissible monomial at node " + f->node + " for the branch through " + f->branch);
  }
}

}  // namespace detail

// The invariants below are computed on the minimal good model, where every
// leg of a node has determinant >= 2. Corpus graphs are already minimal.

// end_node picks the first split; later splits use the canonical end-node.
inline GenusResult geometric_genus_steps(const PlumbingGraph& g, const std::optional<VertexId>& end_node = std::nullopt) {
  if (!certify_zhs(g).is_zhs) throw Error(ErrorCode::NotZHS, "graph is not a unimodular negative-definite tree");
  PlumbingGraph m = minimal_model(g);
  detail::require_splice_type(m);
  GenusResult r;
  r.pg = detail::genus_recursive(m, 0, end_node, r.steps);
  return r;
}

inline BigInt geometric_genus(const PlumbingGraph& g, const std::optional<VertexId>& end_node = std::nullopt) {
  return geometric_genus_steps(g, end_node).pg;
}

inline BigInt geometric_genus_route2(const PlumbingGraph& graph) {
  if (!certify_zhs(graph).is_zhs) throw Error(ErrorCode::NotZHS, "graph is not a unimodular negative-definite tree");
  PlumbingGraph g = minimal_model(graph);
  detail::require_splice_type(g);
  SpliceSplit s = split_at_end_node(g);
  BigInt pg2 = geometric_genus(minimal_model(s.tilde_gamma2.graph));
  return pg2 + periodic_constant(hilbert_series(g, s.v1)) -
         periodic_constant(hilbert_series(s.tilde_gamma2.graph, s.tilde_gamma2.junction));
}

inline BigInt c_invariant(const PlumbingGraph& g) {
  auto cd = canonical_data(g);
  ensure(is_integral(cd.c), "c(Gamma) is not an integer");
  return numerator_of(cd.c);
}

inline BigInt signature(const PlumbingGraph& g) { return -8 * geometric_genus(g) - c_invariant(g); }

// ---------------------------------------------------------------------------
// Casson invariant

struct CassonResult {
  Rational lambda;
  std::vector<std::string> assumptions;
};

namespace detail {

inline Rational seifert_casson(const std::vector<BigInt>& w, std::vector<std::string>& assumptions) {
  if (w.size() == 3) return make_rational(brieskorn_sigma(to_int64(w[0]), to_int64(w[1]), to_int64(w[2])), 8);
  std::string list;
  for (const auto& x : w) list += (list.empty() ? "" : ",") + x.str();
  assumptions.push_back("assumed: lambda = sigma/8 for the Brieskorn complete intersection Sigma(" + list + ")");
  return make_rational(signature(seifert_star(w)), 8);
}

}  // namespace detail

inline CassonResult casson(const PlumbingGraph& g) {
  if (!certify_zhs(g).is_zhs) throw Error(ErrorCode::NotZHS, "graph is not a unimodular negative-definite tree");
  // Splitting at an end-node peels off the Seifert piece of that node and
  // leaves the other node weights unchanged, so the additive recursion
  // unrolls to a sum over the nodes of the splice diagram.
  CassonResult r;
  r.lambda = 0;
  auto diagram = splice_diagram(minimal_model(g));
  for (std::size_t v : diagram.nodes()) r.lambda += detail::seifert_casson(diagram.node_weights(v), r.assumptions);
  ensure(is_integral(r.lambda), "Casson invariant " + to_string(r.lambda) + " is not an integer");
  return r;
}

// ---------------------------------------------------------------------------
// Decomposition tree

struct DecompositionStep {
  std::size_t depth = 0;
  VertexId v1, v2;
  std::vector<BigInt> a_i;
  BigInt a, b, c, d;
  BigInt edge_determinant;        // bc - ad
  std::size_t gamma1_vertices = 0;
  std::size_t tilde_gamma2_vertices = 0;
  std::int64_t junction_weight = 0;
  std::size_t gamma2_vertices = 0;  // minimal model of tilde Gamma_2
  std::string gamma2_diagram;       // canonical splice diagram of Gamma_2
};

struct Decomposition {
  std::vector<DecompositionStep> steps;
  std::vector<std::vector<BigInt>> seifert_pieces;  // node weights, one entry per node
};

inline Decomposition decompose(const PlumbingGraph& input) {
  if (!certify_zhs(input).is_zhs) throw Error(ErrorCode::NotZHS, "graph is not a unimodular negative-definite tree");
  Decomposition out;
  PlumbingGraph g = minimal_model(input);
  for (std::size_t depth = 0; nodes_of(g).size() >= 2; ++depth) {
    SpliceSplit s = split_at_end_node(g);
    DecompositionStep st;
    st.depth = depth;
    st.v1 = s.v1;
    st.v2 = s.v2;
    st.a_i = s.leaf_weights;
    st.a = s.a;
    st.b = s.b;
    st.c = s.c;
    st.d = s.d;
    st.edge_determinant = edge_determinant(s.a, s.b, s.c, s.d);
    st.gamma1_vertices = s.gamma1.size();
    st.tilde_gamma2_vertices = s.tilde_gamma2.graph.size();
    st.junction_weight = s.tilde_gamma2.graph.weight(s.tilde_gamma2.graph.index(s.tilde_gamma2.junction));
    auto w = s.leaf_weights;
    w.push_back(s.b);
    std::sort(w.begin(), w.end());
    out.seifert_pieces.push_back(std::move(w));
    g = minimal_model(s.tilde_gamma2.graph);
    st.gamma2_vertices = g.size();
    st.gamma2_diagram = splice_diagram(g).canonical_form();
    out.steps.push_back(std::move(st));
  }
  if (nodes_of(g).size() == 1) {
    auto diagram = splice_diagram(g);
    out.seifert_pieces.push_back(diagram.node_weights(diagram.nodes().front()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verifier

struct VerifyOptions {
  bool route2 = false;  // also report the top-level route-2 genus
};

struct InvariantReport {
  ZhsCertificate zhs;
  std::size_t reduction_moves = 0;  // calculus moves to the minimal good model
  MonomialConditionReport monomial;
  BigInt c;
  Rational lambda;
  std::optional<BigInt> pg;
  std::optional<BigInt> sigma;
  std::optional<BigInt> pg_route2;
  std::optional<bool> cic_holds;
  bool conditional = false;
  std::vector<SplitStep> steps;
  std::vector<std::string> assumptions;
};

inline InvariantReport verify_cic(const PlumbingGraph& input, const VerifyOptions& opt = {}) {
  InvariantReport r;
  r.zhs = certify_zhs(input);
  if (!r.zhs.is_zhs) throw Error(ErrorCode::NotZHS, "graph is not a unimodular negative-definite tree");
  std::vector<CalculusMove> moves;
  const PlumbingGraph g = minimal_model(input, &moves);
  r.reduction_moves = moves.size();
  r.monomial = check_monomial_condition(g, m_matrix(g));
  r.c = c_invariant(g);
  auto cas = casson(g);
  r.lambda = cas.lambda;
  r.assumptions = cas.assumptions;
  r.conditional = !cas.assumptions.empty();
  if (!r.monomial.satisfied) return r;

  GenusResult gr;
  gr.pg = detail::genus_recursive(g, 0, std::nullopt, gr.steps);
  r.pg = gr.pg;
  r.steps = std::move(gr.steps);
  r.sigma = -8 * gr.pg - r.c;
  if (opt.route2 && nodes_of(g).size() >= 2) {
    r.pg_route2 = r.steps.front().pg_route2;
    ensure(*r.pg_route2 == geometric_genus_route2(g), "route-2 genus is not reproducible");
  }
  r.cic_holds = 8 * r.lambda == Rational(*r.sigma);
  return r;
}

}  // namespace splicetype
