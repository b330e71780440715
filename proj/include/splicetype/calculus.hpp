#pragma once

// Plumbing calculus: negative continued fractions, blow-down and
// 0-absorption, minimal models, Seifert star realizations and the
// non-minimal graph that carries one side of a splice decomposition.

#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "splicetype/graph.hpp"

namespace splicetype {

// [a0, ..., am] with a/b = a0 - 1/(a1 - 1/(... - 1/am)); a0 >= 1, ai >= 2 after.
struct ContinuedFraction {
  std::vector<BigInt> coefficients;

  Rational value() const {
    if (coefficients.empty()) throw Error(ErrorCode::InvalidArgument, "empty continued fraction");
    Rational x = coefficients.back();
    for (std::size_t i = coefficients.size() - 1; i-- > 0;) x = Rational(coefficients[i]) - 1 / x;
    return x;
  }

  friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;
};

inline ContinuedFraction continued_fraction(BigInt a, BigInt b) {
  if (a < 1 || b < 1) throw Error(ErrorCode::InvalidArgument, "continued fraction needs a, b >= 1");
  if (gcd(a, b) != 1) throw Error(ErrorCode::NotCoprime, "gcd(" + to_string(a) + ", " + to_string(b) + ") != 1");
  ContinuedFraction cf;
  while (b != 0) {
    BigInt q = ceil_div(a, b);
    cf.coefficients.push_back(q);
    BigInt r = q * b - a;
    a = b;
    b = r;
  }
  return cf;
}

// ---------------------------------------------------------------------------
// Moves

enum class MoveKind { blow_down, zero_absorption };

struct CalculusMove {
  MoveKind kind;
  VertexId site;
  friend bool operator==(const CalculusMove&, const CalculusMove&) = default;
};

inline bool can_blow_down(const PlumbingGraph& g, std::size_t v) {
  return g.weight(v) == -1 && g.degree(v) <= 2;
}

inline bool can_absorb_zero(const PlumbingGraph& g, std::size_t v) {
  return g.weight(v) == 0 && g.degree(v) == 2;
}

inline PlumbingGraph blow_down(const PlumbingGraph& g, const VertexId& site) {
  const std::size_t v = g.index(site);
  if (!can_blow_down(g, v)) {
    throw Error(ErrorCode::NotBlowdownable,
                site + " has weight " + std::to_string(g.weight(v)) + " and valence " + std::to_string(g.degree(v)));
  }
  auto nb = g.neighbors(v);
  std::vector<VertexSpec> vs;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i == v) continue;
    bool adjacent = std::find(nb.begin(), nb.end(), i) != nb.end();
    vs.push_back({g.id(i), g.weight(i) + (adjacent ? 1 : 0)});
  }
  std::vector<EdgeSpec> es;
  for (auto [i, j] : g.edges())
    if (i != v && j != v) es.push_back({g.id(i), g.id(j)});
  if (nb.size() == 2) es.push_back({g.id(nb[0]), g.id(nb[1])});
  return PlumbingGraph(std::move(vs), es);
}

// (-e1) -- 0 -- (-e2)  becomes a single (-e1-e2) vertex carrying the other
// adjacencies of both neighbors; it keeps the smaller neighbor identifier.
inline PlumbingGraph zero_absorption(const PlumbingGraph& g, const VertexId& site) {
  const std::size_t v = g.index(site);
  if (!can_absorb_zero(g, v)) {
    throw Error(ErrorCode::NotAbsorbable,
                site + " has weight " + std::to_string(g.weight(v)) + " and valence " + std::to_string(g.degree(v)));
  }
  const std::size_t x = g.neighbors(v)[0], y = g.neighbors(v)[1];
  const VertexId merged = g.id(x);  // neighbors are sorted, so id(x) < id(y)
  std::vector<VertexSpec> vs;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i == v || i == y) continue;
    vs.push_back({g.id(i), i == x ? g.weight(x) + g.weight(y) : g.weight(i)});
  }
  std::vector<EdgeSpec> es;
  for (auto [i, j] : g.edges()) {
    if (i == v || j == v) continue;
    auto name = [&](std::size_t k) { return (k == x || k == y) ? merged : g.id(k); };
    es.push_back({name(i), name(j)});
  }
  return PlumbingGraph(std::move(vs), es);
}

inline std::optional<CalculusMove> first_applicable_move(const PlumbingGraph& g) {
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (can_blow_down(g, v)) return CalculusMove{MoveKind::blow_down, g.id(v)};
    if (can_absorb_zero(g, v)) return CalculusMove{MoveKind::zero_absorption, g.id(v)};
  }
  return std::nullopt;
}

inline PlumbingGraph apply_move(const PlumbingGraph& g, const CalculusMove& m) {
  return m.kind == MoveKind::blow_down ? blow_down(g, m.site) : zero_absorption(g, m.site);
}

// Applies moves at the lowest canonical site until none applies. Each move
// removes at least one vertex, so this terminates.
inline PlumbingGraph minimal_model(const PlumbingGraph& g, std::vector<CalculusMove>* trace = nullptr) {
  PlumbingGraph cur = g;
  while (auto m = first_applicable_move(cur)) {
    if (trace) trace->push_back(*m);
    cur = apply_move(cur, *m);
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Seifert stars

inline const VertexId& seifert_center_id() {
  static const VertexId id = "c";
  return id;
}

namespace detail {

inline std::string padded(const std::string& prefix, std::size_t i, int width) {
  std::ostringstream os;
  os << prefix << std::setw(width) << std::setfill('0') << i;
  return os.str();
}

inline void require_pairwise_coprime(const std::vector<BigInt>& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (gcd(xs[i], xs[j]) != 1)
        throw Error(ErrorCode::NotCoprime,
                    "weights " + to_string(xs[i]) + " and " + to_string(xs[j]) + " are not coprime");
}

// Chain vertices carrying the continued fraction, first coefficient first.
inline void append_chain(std::vector<VertexSpec>& vs, std::vector<EdgeSpec>& es, const ContinuedFraction& cf,
                         const std::string& prefix, const VertexId& attach) {
  VertexId prev = attach;
  for (std::size_t k = 0; k < cf.coefficients.size(); ++k) {
    VertexId id = padded(prefix, k + 1, 3);
    vs.push_back({id, -to_int64(cf.coefficients[k], "plumbing weight")});
    if (!prev.empty()) es.push_back({prev, id});
    prev = id;
  }
}

}  // namespace detail

// Minimal star-shaped graph whose splice diagram is one node with the given
// weights. Arm i realizes alpha_i / beta_i with beta_i * prod_{j != i} alpha_j
// = -1 mod alpha_i; the central weight makes e0 + sum beta_i/alpha_i = -1/prod.
inline PlumbingGraph seifert_star(const std::vector<BigInt>& alphas) {
  if (alphas.size() < 3) throw Error(ErrorCode::InvalidArgument, "a Seifert star needs at least 3 arms");
  for (const auto& a : alphas)
    if (a < 2) throw Error(ErrorCode::InvalidArgument, "Seifert weights must be >= 2");
  detail::require_pairwise_coprime(alphas);

  BigInt prod = 1;
  for (const auto& a : alphas) prod *= a;

  std::vector<VertexSpec> vs;
  std::vector<EdgeSpec> es;
  BigInt numerator = -1;
  std::vector<ContinuedFraction> arms;
  for (const auto& a : alphas) {
    BigInt rest = prod / a;
    BigInt beta = mod_floor(-mod_inverse(rest, a), a);
    numerator -= beta * rest;
    arms.push_back(continued_fraction(a, beta));
  }
  ensure(numerator % prod == 0, "Seifert central weight is not integral");
  vs.push_back({seifert_center_id(), to_int64(numerator / prod, "central weight")});
  for (std::size_t i = 0; i < arms.size(); ++i) {
    detail::append_chain(vs, es, arms[i], detail::padded("a", i + 1, 2) + "_", seifert_center_id());
  }
  return PlumbingGraph(std::move(vs), es);
}

// ---------------------------------------------------------------------------
// Tilde Gamma_2: a chain of determinant a, a junction v1', then gamma_prime
// attached at w. The v1 side of Gamma is replaced by junction + chain with
// the same two determinants (a, and s with s b - a det(gamma_prime - w) = 1),
// so the result is again unimodular. The junction is (-1) whenever s < a.

struct TildeGamma2 {
  PlumbingGraph graph;
  VertexId junction;            // v1'
  std::vector<VertexId> chain;  // far end first
};

inline TildeGamma2 build_tilde_gamma2(const PlumbingGraph& gamma_prime, const VertexId& w, const BigInt& a,
                                      const BigInt& b) {
  if (a < 1 || b < 1) throw Error(ErrorCode::InvalidArgument, "a and b must be positive");
  if (gcd(a, b) != 1) throw Error(ErrorCode::NotCoprime, "gcd(a, b) != 1");
  const auto wi = gamma_prime.index_of(w);
  if (!wi) throw Error(ErrorCode::InvalidAttachment, "attachment vertex '" + w + "' not in graph");
  BigInt det_prime = forest_determinant(gamma_prime, detail::full_mask(gamma_prime));
  if (det_prime != b) {
    throw Error(ErrorCode::InvalidAttachment,
                "branch determinant is " + to_string(det_prime) + " but b = " + to_string(b));
  }
  auto rest_mask = detail::full_mask(gamma_prime);
  rest_mask[*wi] = 0;
  const BigInt q = forest_determinant(gamma_prime, rest_mask);
  if ((1 + a * q) % b != 0) {
    throw Error(ErrorCode::InvalidAttachment, "no unimodular completion for a = " + to_string(a) + ", b = " + to_string(b));
  }
  const BigInt s = (1 + a * q) / b;
  const BigInt a_prime = mod_floor(-s, a);
  const BigInt junction_weight = (s + a_prime) / a;

  std::string prefix = "~t2.";
  auto clashes = [&](const std::string& p) {
    for (const auto& id : gamma_prime.ids())
      if (id.compare(0, p.size(), p) == 0) return true;
    return false;
  };
  while (clashes(prefix)) prefix = "~" + prefix;

  TildeGamma2 out;
  out.junction = prefix + "v1p";
  std::vector<VertexSpec> vs = gamma_prime.vertex_specs();
  std::vector<EdgeSpec> es = gamma_prime.edge_specs();
  vs.push_back({out.junction, -to_int64(junction_weight, "junction weight")});
  es.push_back({out.junction, w});
  if (a > 1) {
    auto cf = continued_fraction(a, a_prime);  // junction side first
    const std::size_t len = cf.coefficients.size();
    VertexId prev = out.junction;
    std::vector<VertexId> from_junction;
    for (std::size_t k = 0; k < len; ++k) {
      VertexId id = detail::padded(prefix + "c", len - k, 4);
      vs.push_back({id, -to_int64(cf.coefficients[k], "plumbing weight")});
      es.push_back({prev, id});
      from_junction.push_back(id);
      prev = id;
    }
    out.chain.assign(from_junction.rbegin(), from_junction.rend());
  }
  out.graph = PlumbingGraph(std::move(vs), es);
  auto cert = certify_zhs(out.graph);
  if (!cert.is_zhs) {
    throw Error(ErrorCode::InvalidAttachment, "assembled graph is not a unimodular negative-definite tree");
  }
  return out;
}

}  // namespace splicetype
