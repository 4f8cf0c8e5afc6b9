#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dht/cli.hpp"
#include "dht/errors.hpp"

namespace dht {

namespace {

void check_edge(std::set<edge_t>& seen, long long n, long long u, long long w, std::size_t line,
                const std::string& where) {
  if (u < 0 || w < 0 || u >= n || w >= n)
    throw parse_error(where + "edge endpoint out of range", line);
  if (u == w) throw parse_error(where + "loop at vertex " + std::to_string(u), line);
  edge_t e{static_cast<vertex_t>(std::min(u, w)), static_cast<vertex_t>(std::max(u, w))};
  if (!seen.insert(e).second)
    throw parse_error(where + "duplicate edge {" + std::to_string(e.first) + "," +
                          std::to_string(e.second) + "}",
                      line);
}

}  // namespace

graph parse_graph_text(std::string_view input) {
  std::istringstream in{std::string(input)};
  std::string raw;
  std::size_t line = 0;
  long long n = -1;
  std::set<edge_t> seen;
  while (std::getline(in, raw)) {
    ++line;
    raw = raw.substr(0, raw.find('#'));
    std::istringstream ls(raw);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      if (n >= 0) throw parse_error("second vertex-count line", line);
      if (!(ls >> n) || n < 0) throw parse_error("expected 'v <count>'", line);
    } else if (tag == "e") {
      if (n < 0) throw parse_error("edge before the 'v <count>' line", line);
      long long u, w;
      if (!(ls >> u >> w)) throw parse_error("expected 'e <u> <w>'", line);
      check_edge(seen, n, u, w, line, "");
    } else {
      throw parse_error("unknown record '" + tag + "'", line);
    }
    std::string extra;
    if (ls >> extra) throw parse_error("trailing token '" + extra + "'", line);
  }
  if (n < 0) throw parse_error("missing 'v <count>' line", 0);
  return graph(static_cast<std::size_t>(n), std::vector<edge_t>(seen.begin(), seen.end()));
}

graph parse_graph_json(std::string_view input) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(input);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("malformed JSON: ") + e.what(), 0);
  }
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_number_integer())
    throw parse_error("structured graph needs an integer field \"vertices\"", 0);
  const long long n = j["vertices"].get<long long>();
  if (n < 0) throw parse_error("negative vertex count", 0);
  std::set<edge_t> seen;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw parse_error("\"edges\" must be an array", 0);
    std::size_t k = 0;
    for (const auto& e : j["edges"]) {
      const std::string where = "edges[" + std::to_string(k++) + "]: ";
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
          !e[1].is_number_integer())
        throw parse_error(where + "expected a pair of integers", 0);
      check_edge(seen, n, e[0].get<long long>(), e[1].get<long long>(), 0, where);
    }
  }
  return graph(static_cast<std::size_t>(n), std::vector<edge_t>(seen.begin(), seen.end()));
}

graph parse_graph(std::string_view input) {
  auto first = std::find_if(input.begin(), input.end(),
                            [](unsigned char c) { return !std::isspace(c); });
  if (first != input.end() && *first == '{') return parse_graph_json(input);
  return parse_graph_text(input);
}

graph builtin_graph(std::string_view text) {
  if (text == "point") return interval(0);
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw invalid_argument("unknown builtin graph");
  const std::string name(text.substr(0, colon));
  std::size_t size = 0;
  try {
    size = std::stoul(std::string(text.substr(colon + 1)));
  } catch (const std::exception&) {
    throw invalid_argument("builtin graph size must be a nonnegative integer");
  }
  if (name == "cycle") return cycle(size);
  if (name == "interval") return interval(size);
  throw invalid_argument("unknown builtin graph '" + name + "'");
}

}  // namespace dht
