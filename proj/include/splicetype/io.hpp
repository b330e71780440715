#pragma once

// Graph files and JSON reports.
//
// Graph file grammar, one record per line:
//   vertex <id> <weight>
//   edge <id> <id>
// '#' starts a comment; blank lines are ignored. Every integer in a JSON
// report is written as a decimal string.

#include <charconv>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "splicetype/invariants.hpp"

namespace splicetype {

inline constexpr const char* kToolName = "splicetype";
inline constexpr const char* kToolVersion = "1.0.0";

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::string at_line(std::size_t n) { return "line " + std::to_string(n) + ": "; }

}  // namespace detail

inline PlumbingGraph parse_graph(std::string_view text) {
  std::vector<VertexSpec> vertices;
  std::vector<EdgeSpec> edges;
  std::map<std::string, std::size_t> declared;  // id -> line
  std::vector<std::size_t> edge_lines;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = detail::split_ws(line);
    if (tok.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (tok[0] == "vertex") {
      if (tok.size() != 3) throw Error(ErrorCode::SyntaxError, detail::at_line(line_no) + "expected 'vertex <id> <weight>'");
      std::int64_t w = 0;
      auto [ptr, ec] = std::from_chars(tok[2].data(), tok[2].data() + tok[2].size(), w);
      if (ec != std::errc() || ptr != tok[2].data() + tok[2].size())
        throw Error(ErrorCode::SyntaxError, detail::at_line(line_no) + "weight '" + std::string(tok[2]) + "' is not an integer");
      std::string id(tok[1]);
      if (auto it = declared.find(id); it != declared.end())
        throw Error(ErrorCode::DuplicateVertex, detail::at_line(line_no) + "vertex '" + id + "' already declared on line " +
                                                    std::to_string(it->second));
      declared.emplace(id, line_no);
      vertices.push_back({std::move(id), w});
    } else if (tok[0] == "edge") {
      if (tok.size() != 3) throw Error(ErrorCode::SyntaxError, detail::at_line(line_no) + "expected 'edge <id> <id>'");
      edges.push_back({std::string(tok[1]), std::string(tok[2])});
      edge_lines.push_back(line_no);
    } else {
      throw Error(ErrorCode::SyntaxError, detail::at_line(line_no) + "unknown record '" + std::string(tok[0]) + "'");
    }
    if (end == text.size()) break;
  }

  // Endpoints and cycles are checked here so the diagnostic carries a line.
  std::map<std::string, std::size_t> slot;
  for (const auto& v : vertices) slot.emplace(v.id, slot.size());
  std::vector<std::size_t> parent(vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto& e = edges[k];
    for (const auto* id : {&e.a, &e.b})
      if (!slot.count(*id))
        throw Error(ErrorCode::UnknownEndpoint, detail::at_line(edge_lines[k]) + "edge endpoint '" + *id + "' is not declared");
    std::size_t x = find(slot[e.a]), y = find(slot[e.b]);
    if (x == y)
      throw Error(ErrorCode::NotATree, detail::at_line(edge_lines[k]) + "edge " + e.a + " -- " + e.b + " closes a cycle");
    parent[x] = y;
  }
  return PlumbingGraph(std::move(vertices), edges);
}

inline std::string print_graph(const PlumbingGraph& g) {
  std::string s;
  for (const auto& v : g.vertex_specs()) s += "vertex " + v.id + " " + std::to_string(v.weight) + "\n";
  for (const auto& e : g.edge_specs()) s += "edge " + e.a + " " + e.b + "\n";
  return s;
}

// ---------------------------------------------------------------------------
// JSON

namespace json_out {

using nlohmann::json;

inline json num(const BigInt& x) { return x.str(); }
inline json num(const Rational& x) { return to_string(x); }
inline json num(std::int64_t x) { return std::to_string(x); }
inline json num(std::size_t x) { return std::to_string(x); }

inline json nums(const std::vector<BigInt>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(num(x));
  return a;
}

template <typename T>
inline json optional_num(const std::optional<T>& x) {
  return x ? num(*x) : json(nullptr);
}

inline json zhs(const ZhsCertificate& c) {
  return {{"tree", c.is_tree}, {"negative_definite", c.negative_definite}, {"det", num(c.det)}, {"is_zhs", c.is_zhs}};
}

inline json monomial_cycle(const MonomialCycle& m) {
  json o = json::object();
  for (const auto& [w, e] : m.alpha) o[w] = std::to_string(e);
  return o;
}

inline json certificate(const BranchCertificate& c) {
  json ends = json::array();
  for (std::size_t i = 0; i < c.ends.size(); ++i) ends.push_back({{"end", c.ends[i]}, {"m", num(c.end_weights[i])}});
  return {{"node", c.node},
          {"branch", c.branch},
          {"target", num(c.target)},
          {"ends", ends},
          {"monomial", c.monomial ? monomial_cycle(*c.monomial) : json(nullptr)},
          {"exhausted", c.exhausted}};
}

inline json monomial_report(const MonomialConditionReport& r) {
  json certs = json::array();
  for (const auto& c : r.certificates) certs.push_back(certificate(c));
  json failure = nullptr;
  if (const auto* f = r.first_failure()) failure = {{"node", f->node}, {"branch", f->branch}};
  return {{"satisfied", r.satisfied}, {"certificates", certs}, {"failure", failure}, {"notes", r.notes}};
}

inline json split_step(const SplitStep& s) {
  return {{"depth", num(s.depth)},
          {"v1", s.v1},
          {"v2", s.v2},
          {"a_i", nums(s.a_i)},
          {"a", num(s.a)},
          {"b", num(s.b)},
          {"c", num(s.c)},
          {"d", num(s.d)},
          {"p1", s.p1.to_string()},
          {"p2", s.p2.to_string()},
          {"b1_G1", num(s.b1_g1)},
          {"b1_G2", num(s.b1_g2)},
          {"correction", num(s.correction)},
          {"pg_gamma1", num(s.pg_gamma1)},
          {"pg_gamma2", num(s.pg_gamma2)},
          {"pg", num(s.pg)},
          {"pc_gamma", num(s.pc_gamma)},
          {"pc_tilde_gamma2", num(s.pc_tilde_gamma2)},
          {"pc_gamma1", num(s.pc_gamma1)},
          {"pc_difference", num(s.pc_difference)},
          {"q_product", num(s.q_product)},
          {"pg_route2", num(s.pg_route2)},
          {"routes_agree", s.pg_route2 == s.pg}};
}

inline json invariant_report(const InvariantReport& r) {
  json steps = json::array();
  for (const auto& s : r.steps) steps.push_back(split_step(s));
  json o = {{"zhs", zhs(r.zhs)},
            {"reduction_moves", num(r.reduction_moves)},
            {"monomial_condition", monomial_report(r.monomial)},
            {"pg", optional_num(r.pg)},
            {"c", num(r.c)},
            {"sigma", optional_num(r.sigma)},
            {"lambda", num(r.lambda)},
            {"cic_holds", r.cic_holds ? json(*r.cic_holds) : json(nullptr)},
            {"conditional", r.conditional},
            {"steps", steps},
            {"assumptions", r.assumptions}};
  if (r.pg_route2) o["pg_route2"] = num(*r.pg_route2);
  return o;
}

inline json decomposition(const Decomposition& d) {
  json steps = json::array();
  for (const auto& s : d.steps) {
    steps.push_back({{"depth", num(s.depth)},
                     {"v1", s.v1},
                     {"v2", s.v2},
                     {"a_i", nums(s.a_i)},
                     {"a", num(s.a)},
                     {"b", num(s.b)},
                     {"c", num(s.c)},
                     {"d", num(s.d)},
                     {"edge_determinant", num(s.edge_determinant)},
                     {"gamma1_vertices", num(s.gamma1_vertices)},
                     {"tilde_gamma2_vertices", num(s.tilde_gamma2_vertices)},
                     {"junction_weight", num(s.junction_weight)},
                     {"gamma2_vertices", num(s.gamma2_vertices)},
                     {"gamma2_diagram", s.gamma2_diagram}});
  }
  json pieces = json::array();
  for (const auto& p : d.seifert_pieces) pieces.push_back(nums(p));
  return {{"steps", steps}, {"seifert_pieces", pieces}};
}

inline json series(const FactoredSeries& f, const std::vector<BigInt>& coeffs) {
  json factors = json::array();
  for (auto [n, e] : f.factors()) factors.push_back({{"n", std::to_string(n)}, {"e", std::to_string(e)}});
  return {{"factors", factors},
          {"multiplier", f.multiplier().to_string()},
          {"text", f.to_string()},
          {"period", std::to_string(f.period())},
          {"degree", num(f.degree())},
          {"coefficients", nums(coeffs)}};
}

inline json equations(const EquationSystem& sys) {
  json nodes = json::array();
  for (const auto& ne : sys.nodes) {
    json eqs = json::array();
    for (std::size_t j = 0; j < ne.equations.size(); ++j)
      eqs.push_back({{"name", "f_" + ne.node + "_" + std::to_string(j + 1)}, {"text", ne.equations[j].to_string()}});
    json mons = json::array();
    for (std::size_t j = 0; j < ne.monomials.size(); ++j)
      mons.push_back({{"branch", ne.branches[j]}, {"monomial", monomial_cycle(ne.monomials[j])}});
    nodes.push_back({{"node", ne.node}, {"monomials", mons}, {"equations", eqs}});
  }
  return {{"variables", sys.variables}, {"equation_count", num(sys.equation_count())}, {"nodes", nodes}};
}

}  // namespace json_out

}  // namespace splicetype
