#pragma once

// Plumbing graphs (weighted trees of rational curves) and the exact linear
// algebra of their intersection forms.
//
// Vertex identifiers are opaque strings. The canonical vertex order is the
// lexicographic order of identifiers; every matrix, cycle and vertex list in
// this library is indexed in that order.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "splicetype/error.hpp"
#include "splicetype/numeric.hpp"

namespace splicetype {

using VertexId = std::string;

struct VertexSpec {
  VertexId id;
  std::int64_t weight = 0;
};

struct EdgeSpec {
  VertexId a;
  VertexId b;
};

class PlumbingGraph {
 public:
  PlumbingGraph() = default;

  // Validates and canonicalizes. Throws DuplicateVertex, UnknownEndpoint or
  // NotATree (cycles, self-loops, repeated edges, disconnected input).
  PlumbingGraph(std::vector<VertexSpec> vertices, const std::vector<EdgeSpec>& edges) {
    std::sort(vertices.begin(), vertices.end(),
              [](const VertexSpec& x, const VertexSpec& y) { return x.id < y.id; });
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (i > 0 && vertices[i].id == vertices[i - 1].id) {
        throw Error(ErrorCode::DuplicateVertex, "vertex '" + vertices[i].id + "' declared twice");
      }
      ids_.push_back(vertices[i].id);
      weights_.push_back(vertices[i].weight);
    }
    adj_.assign(ids_.size(), {});

    std::vector<std::size_t> parent(ids_.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& e : edges) {
      auto ia = index_of(e.a);
      auto ib = index_of(e.b);
      if (!ia) throw Error(ErrorCode::UnknownEndpoint, "edge endpoint '" + e.a + "' is not a declared vertex");
      if (!ib) throw Error(ErrorCode::UnknownEndpoint, "edge endpoint '" + e.b + "' is not a declared vertex");
      std::size_t ra = find(*ia), rb = find(*ib);
      if (ra == rb) {
        throw Error(ErrorCode::NotATree, "edge " + e.a + " -- " + e.b + " closes a cycle");
      }
      parent[ra] = rb;
      adj_[*ia].push_back(*ib);
      adj_[*ib].push_back(*ia);
    }
    if (!ids_.empty() && edges.size() + 1 != ids_.size()) {
      throw Error(ErrorCode::NotATree, "graph is disconnected (" + std::to_string(ids_.size()) +
                                           " vertices, " + std::to_string(edges.size()) + " edges)");
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
  }

  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  const std::vector<VertexId>& ids() const noexcept { return ids_; }
  const VertexId& id(std::size_t i) const { return ids_.at(i); }
  std::int64_t weight(std::size_t i) const { return weights_.at(i); }
  std::size_t degree(std::size_t i) const { return adj_.at(i).size(); }
  std::span<const std::size_t> neighbors(std::size_t i) const { return adj_.at(i); }

  std::optional<std::size_t> index_of(const VertexId& v) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    if (it == ids_.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - ids_.begin());
  }

  std::size_t index(const VertexId& v) const {
    auto i = index_of(v);
    if (!i) throw Error(ErrorCode::UnknownVertex, "no vertex '" + v + "'");
    return *i;
  }

  bool adjacent(std::size_t i, std::size_t j) const {
    return std::binary_search(adj_.at(i).begin(), adj_.at(i).end(), j);
  }

  // Edges as index pairs (i < j), sorted.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j : adj_[i])
        if (i < j) out.emplace_back(i, j);
    return out;
  }

  std::vector<VertexSpec> vertex_specs() const {
    std::vector<VertexSpec> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back({ids_[i], weights_[i]});
    return out;
  }

  std::vector<EdgeSpec> edge_specs() const {
    std::vector<EdgeSpec> out;
    for (auto [i, j] : edges()) out.push_back({ids_[i], ids_[j]});
    return out;
  }

  // Induced subgraph on the given vertex indices (must be connected).
  PlumbingGraph induced(std::span<const std::size_t> subset) const {
    std::vector<char> in(size(), 0);
    for (auto i : subset) in.at(i) = 1;
    std::vector<VertexSpec> vs;
    std::vector<EdgeSpec> es;
    for (std::size_t i = 0; i < size(); ++i) {
      if (!in[i]) continue;
      vs.push_back({ids_[i], weights_[i]});
      for (std::size_t j : adj_[i])
        if (i < j && in[j]) es.push_back({ids_[i], ids_[j]});
    }
    return PlumbingGraph(std::move(vs), es);
  }

  friend bool operator==(const PlumbingGraph& x, const PlumbingGraph& y) {
    return x.ids_ == y.ids_ && x.weights_ == y.weights_ && x.adj_ == y.adj_;
  }

 private:
  std::vector<VertexId> ids_;
  std::vector<std::int64_t> weights_;
  std::vector<std::vector<std::size_t>> adj_;
};

// ---------------------------------------------------------------------------
// Dense integer matrices

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  static IntegerMatrix identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  IntegerMatrix operator-() const {
    IntegerMatrix m = *this;
    for (auto& x : m.data_) x = -x;
    return m;
  }

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch");
    IntegerMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

  bool symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  IntegerMatrix select_columns(std::span<const std::size_t> cols) const {
    IntegerMatrix m(rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = (*this)(i, cols[j]);
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

// Fraction-free (Bareiss) elimination with row pivoting.
inline BigInt determinant(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntegerMatrix a = m;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// Laplace expansion along the first row; exponential, for cross-checks only.
inline BigInt determinant_cofactor(const IntegerMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw Error(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  BigInt total = 0;
  for (std::size_t col = 0; col < n; ++col) {
    if (m(0, col) == 0) continue;
    IntegerMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, jj = 0; j < n; ++j)
        if (j != col) minor(i - 1, jj++) = m(i, j);
    BigInt term = m(0, col) * determinant_cofactor(minor);
    total += (col % 2 == 0) ? term : BigInt(-term);
  }
  return total;
}

// I(E): weight on the diagonal, 1 for each edge.
inline IntegerMatrix intersection_matrix(const PlumbingGraph& g) {
  IntegerMatrix m(g.size(), g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    m(i, i) = g.weight(i);
    for (std::size_t j : g.neighbors(i)) m(i, j) = 1;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Tree elimination
//
// For a tree the leaf-first elimination of -I(E) has no fill-in. Writing D(u)
// for det(-I) of the subtree hanging at u (with respect to a root), one has
//   D(u) = (-e_u) * prod_c D(c) - sum_c D'(c) * prod_{c' != c} D(c'),
// where D'(c) is the product of D over the children of c. Every prefix of a
// post-order is a union of complete subtrees, so the leading principal minors
// of -I(E) in post-order are products of D values.

namespace detail {

struct RootedForest {
  std::vector<std::size_t> preorder;
  std::vector<std::size_t> parent;  // npos for roots
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

// Preorder over the vertices with mask[i] != 0, rooting each component at its
// smallest index (or at `root` for the component that contains it).
inline RootedForest root_forest(const PlumbingGraph& g, const std::vector<char>& mask,
                                std::size_t root = RootedForest::npos) {
  RootedForest f;
  f.parent.assign(g.size(), RootedForest::npos);
  std::vector<char> seen(g.size(), 0);
  auto visit = [&](std::size_t r) {
    std::vector<std::size_t> stack{r};
    seen[r] = 1;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      f.preorder.push_back(u);
      auto nb = g.neighbors(u);
      for (auto it = nb.rbegin(); it != nb.rend(); ++it) {
        std::size_t c = *it;
        if (!mask[c] || seen[c]) continue;
        seen[c] = 1;
        f.parent[c] = u;
        stack.push_back(c);
      }
    }
  };
  if (root != RootedForest::npos && mask.at(root)) visit(root);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (mask[i] && !seen[i]) visit(i);
  return f;
}

struct SubtreeDeterminants {
  std::vector<BigInt> d;        // det(-I) of the subtree at u
  std::vector<BigInt> d_prime;  // product of d over children of u
  BigInt total = 1;             // product over components
  bool all_positive = true;
};

inline SubtreeDeterminants subtree_determinants(const PlumbingGraph& g, const std::vector<char>& mask,
                                                const RootedForest& f) {
  SubtreeDeterminants s;
  s.d.assign(g.size(), 0);
  s.d_prime.assign(g.size(), 1);
  std::vector<BigInt> y(g.size(), 0);
  for (auto it = f.preorder.rbegin(); it != f.preorder.rend(); ++it) {
    std::size_t u = *it;
    s.d[u] = BigInt(-g.weight(u)) * s.d_prime[u] - y[u];
    if (s.d[u] <= 0) s.all_positive = false;
    std::size_t p = f.parent[u];
    if (p == RootedForest::npos) {
      s.total *= s.d[u];
    } else {
      y[p] = y[p] * s.d[u] + s.d_prime[p] * s.d_prime[u];
      s.d_prime[p] *= s.d[u];
    }
  }
  (void)mask;
  return s;
}

inline std::vector<char> full_mask(const PlumbingGraph& g) { return std::vector<char>(g.size(), 1); }

}  // namespace detail

// det(-I) of the induced subgraph on mask (a forest; product over components).
inline BigInt forest_determinant(const PlumbingGraph& g, const std::vector<char>& mask) {
  auto f = detail::root_forest(g, mask);
  return detail::subtree_determinants(g, mask, f).total;
}

inline BigInt forest_determinant(const PlumbingGraph& g, std::span<const std::size_t> subset) {
  std::vector<char> mask(g.size(), 0);
  for (auto i : subset) mask.at(i) = 1;
  return forest_determinant(g, mask);
}

struct ZhsCertificate {
  bool is_tree = true;
  bool negative_definite = false;
  BigInt det;  // det I(E)
  bool is_zhs = false;
};

inline ZhsCertificate certify_zhs(const PlumbingGraph& g) {
  ZhsCertificate c;
  auto mask = detail::full_mask(g);
  auto f = detail::root_forest(g, mask);
  auto s = detail::subtree_determinants(g, mask, f);
  c.negative_definite = s.all_positive;
  c.det = (g.size() % 2 == 0) ? s.total : BigInt(-s.total);
  c.is_zhs = c.is_tree && c.negative_definite && abs(c.det) == 1;
  return c;
}

inline void require_zhs(const PlumbingGraph& g) {
  auto c = certify_zhs(g);
  if (!c.negative_definite) throw Error(ErrorCode::NotNegativeDefinite, "intersection form is not negative definite");
  if (abs(c.det) != 1) throw Error(ErrorCode::NotUnimodular, "intersection matrix has determinant " + to_string(c.det));
}

// ---------------------------------------------------------------------------
// m_vw = (-I(E))^{-1}

// Row v of (-I)^{-1} for a unimodular negative-definite tree. On a tree the
// (v, w) cofactor of -I is det(-I) of the graph with the v-w path removed.
inline std::vector<BigInt> m_row(const PlumbingGraph& g, std::size_t v) {
  require_zhs(g);
  auto mask = detail::full_mask(g);
  auto f = detail::root_forest(g, mask, v);
  auto s = detail::subtree_determinants(g, mask, f);

  std::vector<std::vector<std::size_t>> children(g.size());
  for (std::size_t u : f.preorder)
    if (f.parent[u] != detail::RootedForest::npos) children[f.parent[u]].push_back(u);

  std::vector<BigInt> along(g.size(), 0);  // product of dets hanging off the path above u
  std::vector<BigInt> row(g.size(), 0);
  along[v] = 1;
  for (std::size_t u : f.preorder) {
    row[u] = along[u] * s.d_prime[u];
    const auto& ch = children[u];
    std::vector<BigInt> suffix(ch.size() + 1, 1);
    for (std::size_t k = ch.size(); k-- > 0;) suffix[k] = suffix[k + 1] * s.d[ch[k]];
    BigInt prefix = 1;
    for (std::size_t k = 0; k < ch.size(); ++k) {
      along[ch[k]] = along[u] * prefix * suffix[k + 1];
      prefix *= s.d[ch[k]];
    }
  }
  return row;
}

inline std::vector<BigInt> m_row(const PlumbingGraph& g, const VertexId& v) { return m_row(g, g.index(v)); }

class MMatrix {
 public:
  MMatrix() = default;
  explicit MMatrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t size() const noexcept { return n_; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  std::span<const BigInt> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

  IntegerMatrix as_matrix() const {
    IntegerMatrix m(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
    return m;
  }

 private:
  std::size_t n_ = 0;
  std::vector<BigInt> data_;
};

inline MMatrix m_matrix(const PlumbingGraph& g) {
  require_zhs(g);
  MMatrix m(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    auto r = m_row(g, v);
    for (std::size_t w = 0; w < g.size(); ++w) m(v, w) = std::move(r[w]);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Cycles

// A rational combination of the E_v, indexed in the graph's canonical order.
class Cycle {
 public:
  Cycle() = default;
  explicit Cycle(std::size_t n) : c_(n, Rational(0)) {}
  explicit Cycle(std::vector<Rational> coefficients) : c_(std::move(coefficients)) {}

  static Cycle from_integers(std::span<const BigInt> xs) {
    Cycle z(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) z.c_[i] = Rational(xs[i]);
    return z;
  }

  static Cycle basis(std::size_t n, std::size_t v) {
    Cycle z(n);
    z.c_.at(v) = 1;
    return z;
  }

  std::size_t size() const noexcept { return c_.size(); }
  const Rational& operator[](std::size_t i) const { return c_.at(i); }
  Rational& operator[](std::size_t i) { return c_.at(i); }
  // m_w(D)
  const Rational& coefficient(const PlumbingGraph& g, const VertexId& w) const { return c_.at(g.index(w)); }

  bool integral() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return is_integral(x); });
  }
  bool effective() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x >= 0; });
  }

  Cycle& operator+=(const Cycle& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_.at(i);
    return *this;
  }
  Cycle& operator-=(const Cycle& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_.at(i);
    return *this;
  }
  friend Cycle operator+(Cycle a, const Cycle& b) { return a += b; }
  friend Cycle operator-(Cycle a, const Cycle& b) { return a -= b; }
  friend Cycle operator*(const Rational& k, Cycle a) {
    for (auto& x : a.c_) x *= k;
    return a;
  }
  friend bool operator==(const Cycle&, const Cycle&) = default;

 private:
  std::vector<Rational> c_;
};

// Z1 . Z2 under I(E).
inline Rational intersect(const PlumbingGraph& g, const Cycle& a, const Cycle& b) {
  if (a.size() != g.size() || b.size() != g.size())
    throw Error(ErrorCode::InvalidArgument, "cycle does not match the graph");
  Rational s = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    s += Rational(g.weight(i)) * a[i] * b[i];
    for (std::size_t j : g.neighbors(i)) s += a[i] * b[j];
  }
  return s;
}

// E*_v, characterized by E*_v . E_w = -delta_vw.
inline Cycle dual_cycle(const PlumbingGraph& g, const VertexId& v) {
  return Cycle::from_integers(m_row(g, v));
}

struct CanonicalData {
  Cycle z_k;  // Z_K . E_v = -E_v^2 - 2
  Rational k2;
  Rational c;  // K^2 + #vertices
};

inline CanonicalData canonical_data(const PlumbingGraph& g) {
  auto m = m_matrix(g);
  const std::size_t n = g.size();
  // I z = r  =>  z = -M r
  std::vector<BigInt> r(n);
  for (std::size_t v = 0; v < n; ++v) r[v] = BigInt(-g.weight(v) - 2);
  std::vector<BigInt> z(n, 0);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) z[u] -= m(u, v) * r[v];
  CanonicalData cd;
  cd.z_k = Cycle::from_integers(z);
  cd.k2 = intersect(g, cd.z_k, cd.z_k);
  cd.c = cd.k2 + Rational(static_cast<long long>(n));
  return cd;
}

// Riemann-Roch: chi(Z) = -(Z.Z + Z.Z_K)/2.
inline Rational chi_cycle(const PlumbingGraph& g, const CanonicalData& cd, const Cycle& z) {
  return -(intersect(g, z, z) + intersect(g, z, cd.z_k)) / 2;
}

inline Rational chi_cycle(const PlumbingGraph& g, const Cycle& z) {
  return chi_cycle(g, canonical_data(g), z);
}

// ---------------------------------------------------------------------------
// Ends, nodes, branches

// Vertex indices of the component of g - v that contains the neighbor u.
inline std::vector<std::size_t> branch_vertices(const PlumbingGraph& g, std::size_t v, std::size_t u) {
  if (!g.adjacent(v, u)) {
    throw Error(ErrorCode::NotABranch, g.id(u) + " is not adjacent to " + g.id(v));
  }
  std::vector<char> seen(g.size(), 0);
  seen[v] = seen[u] = 1;
  std::vector<std::size_t> out, stack{u};
  while (!stack.empty()) {
    std::size_t x = stack.back();
    stack.pop_back();
    out.push_back(x);
    for (std::size_t y : g.neighbors(x))
      if (!seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Classification {
  std::vector<std::size_t> ends;   // valence 1
  std::vector<std::size_t> nodes;  // valence >= 3
  // branches[v][k]: sorted vertex indices of the branch through the k-th neighbor of v
  std::vector<std::vector<std::vector<std::size_t>>> branches;
};

inline Classification classify(const PlumbingGraph& g) {
  Classification c;
  c.branches.resize(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (g.degree(v) == 1) c.ends.push_back(v);
    if (g.degree(v) >= 3) c.nodes.push_back(v);
    for (std::size_t u : g.neighbors(v)) c.branches[v].push_back(branch_vertices(g, v, u));
  }
  return c;
}

inline std::vector<std::size_t> nodes_of(const PlumbingGraph& g) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (g.degree(v) >= 3) out.push_back(v);
  return out;
}

inline std::vector<std::size_t> ends_of(const PlumbingGraph& g) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (g.degree(v) == 1) out.push_back(v);
  return out;
}

}  // namespace splicetype
