#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dht/graph.hpp"

namespace dht {

// Text form: "v <n>" then "e <u> <w>" lines ('#' starts a comment).
// Structured form: {"vertices": n, "edges": [[u, w], ...]}, chosen when the
// first non-space character is '{'.
graph parse_graph(std::string_view input);
graph parse_graph_text(std::string_view input);
graph parse_graph_json(std::string_view input);

// Builtins: "cycle:N", "interval:N", "point".
graph builtin_graph(std::string_view text);

// Runs one command (args exclude the program name). Exit status: 0 success,
// 1 verification failure, 2 usage or resource error.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace dht
