// File formats for the command-line tools.
//
// Text formats
//   graph:  first line "n m", then m lines "u v" with 0-based endpoints.
//   group:  either one permutation per line in cycle notation, e.g.
//           "(0 1)(2 3)", or an explicit multiplication table as lines of
//           comma/whitespace-separated element indices (auto-detected by the
//           presence of parentheses).  Blank lines and '#' comments ignored.
//
// JSON formats (complex matrices are row-major with re/im interleaved)
//   channel:        {"dim": n, "kraus": [[re, im, re, im, ...], ...]}
//   quantum graph:  {"blocks": [n_a, ...], "A": [re, im, ...]}
//   irrep:          {"dimension": d, "matrices": [[re, im, ...], ...]}

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qexpand/channels.hpp"
#include "qexpand/graphs.hpp"
#include "qexpand/groups.hpp"
#include "qexpand/qgraphs.hpp"

namespace qexpand {

using Json = nlohmann::ordered_json;

/// @throws Error("BadInput") on unreadable files or malformed contents.
Graph read_graph_file(const std::string& path);

/// Auto-detects cycle-notation generators vs. a multiplication table.
/// @throws Error("BadInput") plus the group constructors' own validation.
FiniteGroup read_group_file(const std::string& path);

/// @throws Error("BadInput") on unreadable files or malformed JSON.
Channel read_channel_file(const std::string& path);

/// Comma-separated non-negative integers ("0,3,17").
/// @throws Error("BadInput") on anything else.
std::vector<int> parse_index_list(const std::string& csv);

/// Row-major interleaved re/im encoding of a complex matrix.
Json complex_matrix_json(const CMat& m);

Json channel_json(const Channel& phi);
Json quantum_graph_json(const QuantumGraph& qg);
Json irrep_json(const Irrep& pi);

}  // namespace qexpand
