#pragma once

// Splice diagrams of unimodular plumbing graphs and the splice decomposition
// step at an end-node.
//
// The weight at a node v on an incident edge is det(-I) of the branch of v
// on that side; valence-2 vertices of the plumbing graph are suppressed.

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "splicetype/calculus.hpp"
#include "splicetype/graph.hpp"

namespace splicetype {

class SpliceDiagram {
 public:
  struct Vertex {
    VertexId id;
    bool node = false;
  };

  SpliceDiagram() = default;

  std::size_t size() const noexcept { return vertices_.size(); }
  bool empty() const noexcept { return vertices_.empty(); }
  const Vertex& vertex(std::size_t i) const { return vertices_.at(i); }
  std::span<const std::size_t> neighbors(std::size_t i) const { return adj_.at(i); }

  std::size_t index(const VertexId& id) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (vertices_[i].id == id) return i;
    throw Error(ErrorCode::UnknownVertex, "no diagram vertex '" + id + "'");
  }

  std::vector<std::size_t> nodes() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i)
      if (vertices_[i].node) out.push_back(i);
    return out;
  }

  // Weight at node v on the edge toward u.
  const BigInt& weight(std::size_t v, std::size_t u) const {
    auto it = weights_.find({v, u});
    if (it == weights_.end()) throw Error(ErrorCode::InvalidArgument, "no weight at that node/edge");
    return it->second;
  }

  std::vector<BigInt> node_weights(std::size_t v) const {
    std::vector<BigInt> out;
    for (std::size_t u : adj_.at(v)) out.push_back(weight(v, u));
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t add_vertex(VertexId id, bool node) {
    vertices_.push_back({std::move(id), node});
    adj_.emplace_back();
    return vertices_.size() - 1;
  }

  void add_edge(std::size_t x, std::size_t y) {
    adj_.at(x).push_back(y);
    adj_.at(y).push_back(x);
    std::sort(adj_[x].begin(), adj_[x].end());
    std::sort(adj_[y].begin(), adj_[y].end());
  }

  void set_weight(std::size_t v, std::size_t u, BigInt w) { weights_[{v, u}] = std::move(w); }

  // Identifier-independent encoding: equal strings iff the weighted trees are
  // isomorphic.
  std::string canonical_form() const {
    if (empty()) return "S3";
    std::string best;
    bool first = true;
    for (std::size_t r = 0; r < size(); ++r) {
      if (!vertices_[r].node) continue;
      std::string s = encode(r, static_cast<std::size_t>(-1));
      if (first || s < best) best = s, first = false;
    }
    return first ? "chain" : best;
  }

  friend bool equivalent(const SpliceDiagram& x, const SpliceDiagram& y) {
    return x.canonical_form() == y.canonical_form();
  }

 private:
  std::string encode(std::size_t x, std::size_t parent) const {
    if (!vertices_[x].node) return "L";
    std::vector<std::string> parts;
    for (std::size_t y : adj_[x]) {
      if (y == parent) continue;
      std::string label = "(" + weight(x, y).str() + ":" + (vertices_[y].node ? weight(y, x).str() : "-") + ":" +
                          encode(y, x) + ")";
      parts.push_back(std::move(label));
    }
    std::sort(parts.begin(), parts.end());
    std::string s = "N[";
    for (auto& p : parts) s += p;
    return s + "]";
  }

  std::vector<Vertex> vertices_;
  std::vector<std::vector<std::size_t>> adj_;
  std::map<std::pair<std::size_t, std::size_t>, BigInt> weights_;
};

inline BigInt branch_determinant(const PlumbingGraph& g, std::size_t v, std::size_t u) {
  return forest_determinant(g, std::span<const std::size_t>(branch_vertices(g, v, u)));
}

inline SpliceDiagram splice_diagram(const PlumbingGraph& g) {
  if (!certify_zhs(g).is_zhs) throw Error(ErrorCode::NotZHS, "splice diagrams need a unimodular negative-definite tree");
  SpliceDiagram d;
  auto nodes = nodes_of(g);
  if (nodes.empty()) return d;
  std::map<std::size_t, std::size_t> at;  // plumbing index -> diagram index
  for (std::size_t v = 0; v < g.size(); ++v)
    if (g.degree(v) != 2) at[v] = d.add_vertex(g.id(v), g.degree(v) >= 3);
  for (std::size_t v : nodes) {
    for (std::size_t u : g.neighbors(v)) {
      std::size_t prev = v, cur = u;
      while (g.degree(cur) == 2) {
        std::size_t next = g.neighbors(cur)[0] == prev ? g.neighbors(cur)[1] : g.neighbors(cur)[0];
        prev = cur;
        cur = next;
      }
      std::size_t dv = at.at(v), dc = at.at(cur);
      if (g.degree(cur) == 1 || v < cur) d.add_edge(dv, dc);
      d.set_weight(dv, dc, branch_determinant(g, v, u));
    }
  }
  return d;
}

inline BigInt edge_determinant(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d) {
  return b * c - a * d;
}

// bc - ad for the edge joining nodes v1, v2 of the diagram.
inline BigInt edge_determinant(const SpliceDiagram& delta, std::size_t v1, std::size_t v2) {
  if (!delta.vertex(v1).node || !delta.vertex(v2).node)
    throw Error(ErrorCode::InvalidArgument, "edge determinants are defined on node-node edges");
  BigInt a = 1, d = 1;
  for (std::size_t u : delta.neighbors(v1))
    if (u != v2) a *= delta.weight(v1, u);
  for (std::size_t u : delta.neighbors(v2))
    if (u != v1) d *= delta.weight(v2, u);
  return edge_determinant(a, delta.weight(v1, v2), delta.weight(v2, v1), d);
}

// Cuts the node-node edge v1-v2; each side keeps its weight on a new leaf.
inline std::pair<SpliceDiagram, SpliceDiagram> split_edge(const SpliceDiagram& delta, std::size_t v1, std::size_t v2) {
  auto side = [&](std::size_t keep, std::size_t other) {
    SpliceDiagram out;
    std::map<std::size_t, std::size_t> at;
    std::vector<std::size_t> stack{keep};
    at[keep] = out.add_vertex(delta.vertex(keep).id, delta.vertex(keep).node);
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t y : delta.neighbors(x)) {
        if ((x == keep && y == other) || at.count(y)) continue;
        at[y] = out.add_vertex(delta.vertex(y).id, delta.vertex(y).node);
        out.add_edge(at[x], at[y]);
        stack.push_back(y);
      }
    }
    for (auto [x, dx] : at) {
      if (!delta.vertex(x).node) continue;
      for (std::size_t y : delta.neighbors(x))
        if (at.count(y)) out.set_weight(dx, at[y], delta.weight(x, y));
    }
    std::size_t cut = out.add_vertex("~cut", false);
    out.add_edge(at[keep], cut);
    out.set_weight(at[keep], cut, delta.weight(keep, other));
    return out;
  };
  return {side(v1, v2), side(v2, v1)};
}

// ---------------------------------------------------------------------------
// End-nodes and the splitting step

// Nodes with at most one branch that contains another node.
inline std::vector<std::size_t> end_nodes(const PlumbingGraph& g) {
  auto nodes = nodes_of(g);
  std::vector<char> is_node(g.size(), 0);
  for (auto v : nodes) is_node[v] = 1;
  std::vector<std::size_t> out;
  for (std::size_t v : nodes) {
    int with_nodes = 0;
    for (std::size_t u : g.neighbors(v)) {
      auto br = branch_vertices(g, v, u);
      if (std::any_of(br.begin(), br.end(), [&](std::size_t x) { return is_node[x]; })) ++with_nodes;
    }
    if (with_nodes <= 1) out.push_back(v);
  }
  return out;
}

struct SpliceSplit {
  VertexId v1;
  VertexId v2;
  std::vector<VertexId> leaf_ends;   // far ends w_i of the chain branches of v1
  std::vector<BigInt> leaf_weights;  // a_i
  BigInt b;                          // weight at v1 toward v2
  BigInt c;                          // weight at v2 toward v1
  std::vector<BigInt> d_weights;     // other weights at v2
  BigInt a;                          // prod a_i
  BigInt d;                          // prod d_j
  PlumbingGraph gamma_prime;         // branch of v1 containing v2
  VertexId w;                        // vertex of gamma_prime adjacent to v1
  PlumbingGraph gamma1;              // Seifert star for (a_1..a_r, b)
  TildeGamma2 tilde_gamma2;
};

inline SpliceSplit split_at_end_node(const PlumbingGraph& g, const VertexId& end_node) {
  if (!certify_zhs(g).is_zhs) throw Error(ErrorCode::NotZHS, "graph is not a unimodular negative-definite tree");
  auto nodes = nodes_of(g);
  if (nodes.size() < 2) throw Error(ErrorCode::FewerThanTwoNodes, "the graph has " + std::to_string(nodes.size()) + " node(s)");
  const std::size_t v1 = g.index(end_node);
  auto ends = end_nodes(g);
  if (std::find(ends.begin(), ends.end(), v1) == ends.end())
    throw Error(ErrorCode::InvalidArgument, end_node + " is not an end-node");
  std::vector<char> is_node(g.size(), 0);
  for (auto v : nodes) is_node[v] = 1;

  SpliceSplit s;
  s.v1 = g.id(v1);
  s.a = 1;
  std::size_t toward = static_cast<std::size_t>(-1);
  for (std::size_t u : g.neighbors(v1)) {
    auto br = branch_vertices(g, v1, u);
    if (std::any_of(br.begin(), br.end(), [&](std::size_t x) { return is_node[x]; })) {
      toward = u;
      s.b = forest_determinant(g, std::span<const std::size_t>(br));
      s.gamma_prime = g.induced(br);
      s.w = g.id(u);
      continue;
    }
    std::size_t prev = v1, cur = u;
    while (g.degree(cur) == 2) {
      std::size_t next = g.neighbors(cur)[0] == prev ? g.neighbors(cur)[1] : g.neighbors(cur)[0];
      prev = cur;
      cur = next;
    }
    s.leaf_ends.push_back(g.id(cur));
    s.leaf_weights.push_back(forest_determinant(g, std::span<const std::size_t>(br)));
    s.a *= s.leaf_weights.back();
  }
  ensure(toward != static_cast<std::size_t>(-1), "end-node without a branch toward the other nodes");

  std::size_t prev = v1, cur = toward;
  while (!is_node[cur]) {
    std::size_t next = g.neighbors(cur)[0] == prev ? g.neighbors(cur)[1] : g.neighbors(cur)[0];
    prev = cur;
    cur = next;
  }
  s.v2 = g.id(cur);
  s.d = 1;
  for (std::size_t u : g.neighbors(cur)) {
    BigInt det = branch_determinant(g, cur, u);
    if (u == prev) {
      s.c = det;
    } else {
      s.d_weights.push_back(det);
      s.d *= det;
    }
  }

  std::vector<BigInt> star = s.leaf_weights;
  star.push_back(s.b);
  s.gamma1 = seifert_star(star);
  s.tilde_gamma2 = build_tilde_gamma2(s.gamma_prime, s.w, s.a, s.b);
  ensure(s.b * s.c > s.a * s.d, "edge determinant is not positive");
  return s;
}

// Uses the end-node that comes first in canonical order.
inline SpliceSplit split_at_end_node(const PlumbingGraph& g) {
  if (!certify_zhs(g).is_zhs) throw Error(ErrorCode::NotZHS, "graph is not a unimodular negative-definite tree");
  auto nodes = nodes_of(g);
  if (nodes.size() < 2) throw Error(ErrorCode::FewerThanTwoNodes, "the graph has " + std::to_string(nodes.size()) + " node(s)");
  return split_at_end_node(g, g.id(end_nodes(g).front()));
}

}  // namespace splicetype
