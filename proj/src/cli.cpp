#include "dht/cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dht/cubical.hpp"
#include "dht/errors.hpp"
#include "dht/homology.hpp"
#include "dht/homotopy.hpp"
#include "dht/kan.hpp"
#include "dht/nerve.hpp"

namespace dht {

namespace {

using json = nlohmann::json;

// Verification failure: report is still printed, exit status 1.
struct outcome {
  json report;
  bool passed = true;
};

struct shared_flags {
  std::string input;
  std::string builtin;
  vertex_t basepoint = 0;
  int m = 1;
  int max_dim = -1;
  int degree = 1;
  int dim = 2;
  int L_max = 5;
  int L = -1;
  int i = 0;
  int eps = -1;
  int j = -1;
  int trials = 1;
  std::string side_name = "both";
  std::size_t budget = 10'000'000;
  std::uint64_t seed = 1;
  std::string format = "json";
  unsigned threads = 0;
  std::vector<vertex_t> f, g, p, q;
};

json to_json(const bigint& v) {
  if (v <= std::numeric_limits<long long>::max()) return v.convert_to<long long>();
  return v.str();
}

json point_json(const std::optional<point_t>& p) {
  if (!p) return nullptr;
  return json(*p);
}

graph load_graph(const shared_flags& s, std::istream& in) {
  if (!s.builtin.empty()) {
    if (!s.input.empty()) throw invalid_argument("--input and --graph are exclusive");
    return builtin_graph(s.builtin);
  }
  std::string text;
  if (s.input.empty() || s.input == "-") {
    text.assign(std::istreambuf_iterator<char>(in), {});
  } else {
    std::ifstream file(s.input);
    if (!file) throw invalid_argument("cannot open input file '" + s.input + "'");
    text.assign(std::istreambuf_iterator<char>(file), {});
  }
  return parse_graph(text);
}

nerve_options options(const shared_flags& s) { return {s.budget, s.threads}; }

void require_vertex(const graph& g, vertex_t v) {
  if (v >= g.vertex_count()) throw invalid_argument("basepoint out of range");
}

outcome nerve_count(const shared_flags& s, const graph& g) {
  const int top = s.max_dim < 0 ? 2 : s.max_dim;
  const auto t = enumerate_nerve(g, s.m, top, options(s));
  json dims = json::array();
  for (int n = 0; n <= top; ++n)
    dims.push_back({{"dim", n}, {"cells", t.cell_count(n)}, {"nondegenerate", t.nondegenerate_count(n)}});
  return {{{"m", s.m}, {"max_dim", top}, {"dims", dims}}};
}

outcome homology_cmd(const shared_flags& s, const graph& g) {
  require_vertex(g, s.basepoint);
  const auto h = reduced_discrete_homology(g, s.basepoint, s.degree, s.max_dim, options(s));
  json torsion = json::array();
  for (const auto& t : h.torsion) torsion.push_back(to_json(t));
  return {{{"degree", s.degree}, {"rank", h.rank}, {"torsion", torsion}}};
}

outcome a0_cmd(const graph& g) {
  return {{{"components", connected_components(g).count}}};
}

outcome a1_cmd(const shared_flags& s, const graph& g) {
  require_vertex(g, s.basepoint);
  json rows = json::array();
  for (const auto& r : a1_estimate(g, s.basepoint, s.L_max, s.budget))
    rows.push_back({{"L", r.L}, {"components", r.components}, {"stabilized", r.stabilized}});
  return {{{"basepoint", s.basepoint}, {"rows", rows}}};
}

outcome homotopic_cmd(const shared_flags& s, const graph& g) {
  json report;
  if (!s.f.empty() || !s.g.empty()) {
    if (!s.p.empty() || !s.q.empty()) throw invalid_argument("give either --f/--g or --p/--q");
    auto gp = share(g);
    const graph_map f(gp, gp, s.f), h(gp, gp, s.g);
    const auto witness = homotopic(f, h);
    report["homotopic"] = witness.has_value();
    json steps = json::array();
    if (witness)
      for (const auto& w : *witness) steps.push_back(w.assignment());
    report["witness"] = steps;
    return {report};
  }
  if (s.p.empty() || s.q.empty()) throw invalid_argument("homotopic needs --f/--g or --p/--q");
  const auto p = make_loop(g, s.p.front(), s.p);
  const auto q = make_loop(g, s.q.front(), s.q);
  const int L = s.L < 0 ? std::max(p.half_length, q.half_length) : s.L;
  const auto witness = based_homotopic(g, p, q, L, s.budget);
  report["homotopic"] = witness.has_value();
  report["window"] = L;
  json steps = json::array();
  if (witness)
    for (const auto& w : *witness) steps.push_back(w.labels);
  report["witness"] = steps;
  return {report};
}

outcome fill_cmd(const shared_flags& s, const graph& g) {
  if (s.dim < 1) throw invalid_argument("--n must be at least 1");
  std::mt19937_64 rng(s.seed);
  json failures = json::array();
  int passed = 0;
  for (int trial = 0; trial < s.trials; ++trial) {
    const int i = s.i > 0 ? s.i : 1 + static_cast<int>(rng() % s.dim);
    const int eps = s.eps >= 0 ? s.eps : static_cast<int>(rng() % 2);
    const auto box = random_open_box(g, s.m, s.dim, i, eps, rng);
    const auto filler = fill_open_box(g, box);
    const auto bad = check_filler_contract(box, filler);
    if (!bad && filler.is_graph_map(g)) {
      ++passed;
    } else {
      json f = {{"trial", trial}, {"i", i}, {"eps", eps}};
      if (bad) f["face"] = {bad->i, bad->eps};
      failures.push_back(f);
    }
  }
  return {{{"seed", s.seed},
           {"m", s.m},
           {"n", s.dim},
           {"trials", s.trials},
           {"passed", passed},
           {"failures", failures}},
          passed == s.trials};
}

outcome verify_phi_cmd(const shared_flags& s) {
  json cases = json::array();
  bool all = true;
  for (int i = 1; i <= s.dim; ++i)
    for (int e = 0; e < 2; ++e) {
      if ((s.i > 0 && i != s.i) || (s.eps >= 0 && e != s.eps)) continue;
      const auto r = verify_phi(phi_parameters(s.m, s.dim, i, e));
      all = all && r.ok();
      cases.push_back({{"i", i},
                       {"eps", e},
                       {"is_graph_map", r.is_graph_map},
                       {"lands_in_box", r.lands_in_box},
                       {"triangle_commutes", r.triangle_commutes},
                       {"witness", point_json(r.witness)}});
    }
  return {{{"m", s.m}, {"n", s.dim}, {"cases", cases}, {"all_pass", all}}, all};
}

outcome verify_steps_cmd(const shared_flags& s) {
  std::vector<side> sides;
  if (s.side_name == "l" || s.side_name == "both") sides.push_back(side::l);
  if (s.side_name == "r" || s.side_name == "both") sides.push_back(side::r);
  if (sides.empty()) throw invalid_argument("--side must be l, r or both");
  if (s.dim < 1) throw invalid_argument("--n must be at least 1");
  json runs = json::array();
  bool all = true;
  for (side sd : sides)
    for (int j = 0; j < s.dim; ++j) {
      if (s.j >= 0 && j != s.j) continue;
      const auto r = verify_step_props(s.m, s.dim, j, sd);
      json failed = json::array();
      for (const auto& c : r.checks)
        if (!c.holds)
          failed.push_back({{"kind", c.kind}, {"i", c.i}, {"eps", c.eps}, {"witness", point_json(c.witness)}});
      all = all && r.ok();
      runs.push_back({{"side", sd == side::l ? "l" : "r"},
                      {"j", j},
                      {"checks", r.checks.size()},
                      {"failed", failed}});
    }
  return {{{"m", s.m}, {"n", s.dim}, {"runs", runs}, {"all_pass", all}}, all};
}

outcome verify_identities_cmd(const shared_flags& s, const graph& g) {
  const int top = s.max_dim < 0 ? 3 : s.max_dim;
  const auto t = enumerate_nerve(g, s.m, top, options(s));
  const auto r = check_identities(t.cubical());
  json first = json::array();
  for (std::size_t k = 0; k < std::min<std::size_t>(r.violations.size(), 10); ++k) {
    const auto& v = r.violations[k];
    first.push_back({{"identity", v.identity}, {"dim", v.dim}, {"cell", v.cell}});
  }
  return {{{"m", s.m},
           {"max_dim", top},
           {"checked", r.checked},
           {"unchecked", r.unchecked},
           {"violations", r.violations.size()},
           {"first_violations", first}},
          r.ok()};
}

// Flat "key: value" rendering; arrays of objects become indented blocks.
void print_table(std::ostream& out, const json& j, const std::string& indent = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_array() && !it->empty() && (*it)[0].is_object()) {
      out << indent << it.key() << ":\n";
      for (const auto& row : *it) {
        std::string line;
        for (auto c = row.begin(); c != row.end(); ++c)
          line += (line.empty() ? "" : "  ") + c.key() + "=" + c->dump();
        out << indent << "  " << line << '\n';
      }
    } else {
      out << indent << it.key() << ": " << it->dump() << '\n';
    }
  }
}

void parse_list(const std::string& text, std::vector<vertex_t>& out) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(static_cast<vertex_t>(std::stoul(item)));
    } catch (const std::exception&) {
      throw invalid_argument("bad vertex list '" + text + "'");
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Discrete homotopy toolkit for finite simple graphs"};
  app.require_subcommand(1);
  shared_flags s;
  std::string f_text, g_text, p_text, q_text;

  auto graph_flags = [&](CLI::App* c) {
    c->add_option("--input", s.input, "graph file, '-' or omitted for stdin");
    c->add_option("--graph", s.builtin, "builtin graph: cycle:N, interval:N, point");
  };
  auto common = [&](CLI::App* c) {
    c->add_option("--budget", s.budget, "max enumerated cells or paths");
    c->add_option("--format", s.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    c->add_option("--threads", s.threads, "worker threads, 0 = all cores");
    c->add_option("--seed", s.seed, "random seed");
  };
  std::map<std::string, CLI::App*> cmd;
  auto add = [&](const std::string& name, const std::string& help, bool needs_graph) {
    auto* c = app.add_subcommand(name, help);
    if (needs_graph) graph_flags(c);
    common(c);
    cmd[name] = c;
    return c;
  };
  {
    auto* c = add("nerve-count", "cells per dimension of N_m(G)", true);
    c->add_option("--m", s.m)->check(CLI::PositiveNumber);
    c->add_option("--max-dim", s.max_dim);
  }
  {
    auto* c = add("homology", "reduced discrete homology", true);
    c->add_option("--n", s.degree, "degree");
    c->add_option("--basepoint", s.basepoint);
    c->add_option("--max-dim", s.max_dim, "truncation, default n+1");
  }
  add("a0", "connected components", true);
  {
    auto* c = add("a1", "loop-graph component profile", true);
    c->add_option("--basepoint", s.basepoint);
    c->add_option("--L-max", s.L_max)->check(CLI::PositiveNumber);
  }
  {
    auto* c = add("homotopic", "homotopy of self-maps or based loops", true);
    c->add_option("--f", f_text, "self-map as comma separated images");
    c->add_option("--g", g_text, "self-map as comma separated images");
    c->add_option("--p", p_text, "based loop as comma separated labels");
    c->add_option("--q", q_text, "based loop as comma separated labels");
    c->add_option("--L", s.L, "loop window half-length");
  }
  {
    auto* c = add("fill", "fill random compatible open boxes", true);
    c->add_option("--m", s.m)->check(CLI::PositiveNumber);
    c->add_option("--n", s.dim, "box dimension");
    c->add_option("--i", s.i, "missing face index, default random");
    c->add_option("--eps", s.eps, "missing face side, default random");
    c->add_option("--trials", s.trials)->check(CLI::NonNegativeNumber);
  }
  {
    auto* c = add("verify-phi", "check the open-box retraction map", false);
    c->add_option("--m", s.m)->check(CLI::PositiveNumber);
    c->add_option("--n", s.dim)->check(CLI::PositiveNumber);
    c->add_option("--i", s.i);
    c->add_option("--eps", s.eps);
  }
  {
    auto* c = add("verify-steps", "check the step map face factorizations", false);
    c->add_option("--m", s.m)->check(CLI::PositiveNumber);
    c->add_option("--n", s.dim)->check(CLI::PositiveNumber);
    c->add_option("--j", s.j);
    c->add_option("--side", s.side_name, "l, r or both");
  }
  {
    auto* c = add("verify-identities", "check the cubical identities on N_m(G)", true);
    c->add_option("--m", s.m)->check(CLI::PositiveNumber);
    c->add_option("--max-dim", s.max_dim, "default 3");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    parse_list(f_text, s.f);
    parse_list(g_text, s.g);
    parse_list(p_text, s.p);
    parse_list(q_text, s.q);
    outcome result;
    if (cmd["verify-phi"]->parsed()) {
      result = verify_phi_cmd(s);
    } else if (cmd["verify-steps"]->parsed()) {
      result = verify_steps_cmd(s);
    } else {
      const graph g = load_graph(s, in);
      if (cmd["nerve-count"]->parsed()) result = nerve_count(s, g);
      if (cmd["homology"]->parsed()) result = homology_cmd(s, g);
      if (cmd["a0"]->parsed()) result = a0_cmd(g);
      if (cmd["a1"]->parsed()) result = a1_cmd(s, g);
      if (cmd["homotopic"]->parsed()) result = homotopic_cmd(s, g);
      if (cmd["fill"]->parsed()) result = fill_cmd(s, g);
      if (cmd["verify-identities"]->parsed()) result = verify_identities_cmd(s, g);
    }
    if (s.format == "table")
      print_table(out, result.report);
    else
      out << result.report.dump() << '\n';
    return result.passed ? 0 : 1;
  } catch (const std::exception& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error: " << msg << '\n';
    return 2;
  }
}

}  // namespace dht
