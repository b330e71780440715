// Command-line front end.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "splicetype/io.hpp"

namespace {

using namespace splicetype;
using nlohmann::json;

struct Options {
  std::string file;
  bool json = false;
  std::string out;
  bool route2 = false;
  bool strict = false;
  std::string end_node;
  std::string vertex;
  std::uint64_t terms = 20;
  std::vector<std::int64_t> brieskorn;
};

struct Input {
  std::string text;
  std::string sha256;
  PlumbingGraph graph;
};

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::InvariantViolation, "SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned int i = 0; i < len; ++i) {
    s += hex[digest[i] >> 4];
    s += hex[digest[i] & 15];
  }
  return s;
}

Input load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  Input r;
  r.text = ss.str();
  r.sha256 = sha256_hex(r.text);
  r.graph = parse_graph(r.text);
  return r;
}

void emit(const Options& opt, const std::string& body) {
  if (opt.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + opt.out + "'");
  f << body;
}

void emit(const Options& opt, const json& doc) { emit(opt, doc.dump(2) + "\n"); }

json document(const Input& in) {
  return {{"tool", kToolName}, {"version", kToolVersion}, {"input_sha256", in.sha256}};
}

void reject_assumptions(const Options& opt, const std::vector<std::string>& assumptions) {
  if (!opt.strict) return;
  for (const auto& a : assumptions)
    if (a.rfind("assumed:", 0) == 0) throw Error(ErrorCode::AssumptionRejected, a);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------------------

int run_check(const Options& opt) {
  auto in = load(opt.file);
  auto zhs = certify_zhs(in.graph);
  json doc = document(in);
  doc["zhs"] = json_out::zhs(zhs);
  std::ostringstream text;
  text << "tree: " << yes_no(zhs.is_tree) << "\nnegative definite: " << yes_no(zhs.negative_definite)
       << "\ndet: " << zhs.det << "\nintegral homology sphere: " << yes_no(zhs.is_zhs) << "\n";
  if (zhs.is_zhs) {
    std::vector<CalculusMove> moves;
    auto g = minimal_model(in.graph, &moves);
    auto report = check_monomial_condition(g);
    doc["reduction_moves"] = json_out::num(moves.size());
    doc["monomial_condition"] = json_out::monomial_report(report);
    text << "reduction moves: " << moves.size() << "\nmonomial condition: " << (report.satisfied ? "satisfied" : "failed")
         << "\n";
    for (const auto& c : report.certificates) {
      text << "  node " << c.node << " branch " << c.branch << " target " << c.target << ": ";
      if (c.monomial)
        text << monomial_to_string(c.monomial->monomial()) << "\n";
      else
        text << "none (" << (c.exhausted ? "search exhausted" : "search incomplete") << ")\n";
    }
    for (const auto& n : report.notes) text << "note: " << n << "\n";
  }
  if (opt.json)
    emit(opt, doc);
  else
    emit(opt, text.str());
  return 0;
}

int run_report(const Options& opt, bool is_verify) {
  auto in = load(opt.file);
  VerifyOptions vo;
  vo.route2 = opt.route2;
  auto r = verify_cic(in.graph, vo);
  reject_assumptions(opt, r.assumptions);
  json doc = document(in);
  doc.update(json_out::invariant_report(r));
  if (opt.json) {
    emit(opt, doc);
  } else {
    std::ostringstream t;
    t << "integral homology sphere: " << yes_no(r.zhs.is_zhs) << "\n";
    t << "monomial condition: " << (r.monomial.satisfied ? "satisfied" : "failed") << "\n";
    t << "pg: " << (r.pg ? r.pg->str() : "n/a") << "\n";
    if (r.pg_route2) t << "pg (route 2): " << *r.pg_route2 << "\n";
    t << "c: " << r.c << "\n";
    t << "sigma: " << (r.sigma ? r.sigma->str() : "n/a") << "\n";
    t << "lambda: " << to_string(r.lambda) << "\n";
    t << "cic holds: " << (r.cic_holds ? yes_no(*r.cic_holds) : std::string("not evaluated")) << "\n";
    for (const auto& a : r.assumptions) t << a << "\n";
    emit(opt, t.str());
  }
  if (is_verify && r.cic_holds && !*r.cic_holds) {
    throw Error(ErrorCode::InvariantViolation,
                "lambda = " + to_string(r.lambda) + " but sigma/8 = " + to_string(make_rational(*r.sigma, 8)));
  }
  return 0;
}

int run_pg(const Options& opt) {
  auto in = load(opt.file);
  std::optional<VertexId> end;
  if (!opt.end_node.empty()) end = opt.end_node;
  auto pg = geometric_genus(in.graph, end);
  std::optional<BigInt> pg2;
  if (opt.route2 && nodes_of(minimal_model(in.graph)).size() >= 2) pg2 = geometric_genus_route2(in.graph);
  if (opt.json) {
    json doc = document(in);
    doc["pg"] = json_out::num(pg);
    if (pg2) doc["pg_route2"] = json_out::num(*pg2);
    emit(opt, doc);
  } else {
    std::string s = pg.str() + "\n";
    if (pg2) s += "route 2: " + pg2->str() + "\n";
    emit(opt, s);
  }
  return 0;
}

int run_casson(const Options& opt) {
  auto in = load(opt.file);
  auto r = casson(in.graph);
  reject_assumptions(opt, r.assumptions);
  if (opt.json) {
    json doc = document(in);
    doc["lambda"] = json_out::num(r.lambda);
    doc["assumptions"] = r.assumptions;
    emit(opt, doc);
  } else {
    std::string s = to_string(r.lambda) + "\n";
    for (const auto& a : r.assumptions) s += a + "\n";
    emit(opt, s);
  }
  return 0;
}

int run_series(const Options& opt) {
  auto in = load(opt.file);
  if (opt.vertex.empty()) throw Error(ErrorCode::InvalidArgument, "--vertex is required");
  auto h = hilbert_series(in.graph, opt.vertex);
  if (opt.terms == 0) throw Error(ErrorCode::InvalidArgument, "--terms must be positive");
  auto coeffs = expand(h, opt.terms - 1);
  if (opt.json) {
    json doc = document(in);
    doc["vertex"] = opt.vertex;
    doc["series"] = json_out::series(h, coeffs);
    emit(opt, doc);
  } else {
    std::string s = h.to_string() + "\n";
    for (std::size_t i = 0; i < coeffs.size(); ++i) s += (i ? " " : "") + coeffs[i].str();
    emit(opt, s + "\n");
  }
  return 0;
}

int run_decompose(const Options& opt) {
  auto in = load(opt.file);
  auto d = decompose(in.graph);
  if (opt.json) {
    json doc = document(in);
    doc["decomposition"] = json_out::decomposition(d);
    emit(opt, doc);
    return 0;
  }
  std::ostringstream t;
  for (const auto& s : d.steps) {
    t << std::string(2 * s.depth, ' ') << "split " << s.v1 << " -- " << s.v2 << ": a=" << s.a << " b=" << s.b
      << " c=" << s.c << " d=" << s.d << " bc-ad=" << s.edge_determinant << " junction weight " << s.junction_weight
      << "\n";
    t << std::string(2 * s.depth + 2, ' ') << "remaining diagram " << s.gamma2_diagram << "\n";
  }
  t << "seifert pieces:";
  for (const auto& p : d.seifert_pieces) {
    t << " (";
    for (std::size_t i = 0; i < p.size(); ++i) t << (i ? "," : "") << p[i];
    t << ")";
  }
  emit(opt, t.str() + "\n");
  return 0;
}

int run_equations(const Options& opt) {
  auto in = load(opt.file);
  if (!certify_zhs(in.graph).is_zhs) throw Error(ErrorCode::NotZHS, "graph is not a unimodular negative-definite tree");
  auto sys = generate_splice_equations(minimal_model(in.graph));
  if (opt.json) {
    json doc = document(in);
    doc["equations"] = json_out::equations(sys);
    emit(opt, doc);
  } else {
    emit(opt, sys.to_text());
  }
  return 0;
}

int run_oracle(const Options& opt) {
  if (opt.brieskorn.size() != 3) throw Error(ErrorCode::InvalidArgument, "--brieskorn takes three integers");
  auto [a, b, c] = std::tuple{opt.brieskorn[0], opt.brieskorn[1], opt.brieskorn[2]};
  auto sigma = brieskorn_sigma(a, b, c);
  auto pg = brieskorn_pg(a, b, c);
  if (opt.json) {
    json doc = {{"tool", kToolName},
                {"version", kToolVersion},
                {"brieskorn", {std::to_string(a), std::to_string(b), std::to_string(c)}},
                {"sigma", json_out::num(sigma)},
                {"pg", json_out::num(pg)}};
    emit(opt, doc);
  } else {
    emit(opt, "sigma: " + sigma.str() + "\npg: " + pg.str() + "\n");
  }
  return 0;
}

void print_error(const std::string& code, const std::string& message) {
  json e = {{"error", {{"code", code}, {"message", message}}}};
  std::cerr << e.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants of splice-type surface singularities"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* sub, bool file) {
    if (file) sub->add_option("file", opt.file, "graph file")->required();
    sub->add_flag("--json", opt.json, "emit JSON");
    sub->add_option("--out", opt.out, "write output to this path");
    sub->add_flag("--route2", opt.route2, "also run the second genus route");
    sub->add_flag("--strict", opt.strict, "fail when a result depends on an assumption");
    return sub;
  };
  auto* check = common(app.add_subcommand("check", "integral homology sphere and monomial condition"), true);
  auto* invariants = common(app.add_subcommand("invariants", "full invariant report"), true);
  auto* verify = common(app.add_subcommand("verify", "full report; fails if lambda != sigma/8"), true);
  auto* pg = common(app.add_subcommand("pg", "geometric genus"), true);
  pg->add_option("--end-node", opt.end_node, "end-node for the first split");
  auto* cas = common(app.add_subcommand("casson", "Casson invariant"), true);
  auto* series = common(app.add_subcommand("series", "Hilbert series at a vertex"), true);
  series->add_option("--vertex", opt.vertex, "vertex id")->required();
  series->add_option("--terms", opt.terms, "number of coefficients")->capture_default_str();
  auto* dec = common(app.add_subcommand("decompose", "splice decomposition tree"), true);
  auto* eqs = common(app.add_subcommand("equations", "splice diagram equations"), true);
  auto* oracle = common(app.add_subcommand("oracle", "lattice counts for a Brieskorn sphere"), false);
  oracle->add_option("--brieskorn", opt.brieskorn, "a b c")->expected(3)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("InvalidArgument", e.what());
    return 1;
  }

  try {
    if (check->parsed()) return run_check(opt);
    if (invariants->parsed()) return run_report(opt, false);
    if (verify->parsed()) return run_report(opt, true);
    if (pg->parsed()) return run_pg(opt);
    if (cas->parsed()) return run_casson(opt);
    if (series->parsed()) return run_series(opt);
    if (dec->parsed()) return run_decompose(opt);
    if (eqs->parsed()) return run_equations(opt);
    if (oracle->parsed()) return run_oracle(opt);
  } catch (const Error& e) {
    print_error(std::string(error_code_name(e.code())), e.detail());
    return is_internal(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    print_error("InvariantViolation", e.what());
    return 2;
  }
  return 1;
}
