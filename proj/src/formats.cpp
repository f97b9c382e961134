#include "qexpand/formats.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qexpand/error.hpp"

namespace qexpand {

namespace {

// Content lines with comments ('#' to end of line) and blanks stripped.
std::vector<std::string> content_lines(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "BadInput", "cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r\n");
    lines.push_back(line.substr(first, last - first + 1));
  }
  return lines;
}

std::vector<int> parse_ints(const std::string& text, const std::string& what) {
  std::vector<int> values;
  std::string token;
  std::istringstream in(text);
  while (in >> token) {
    try {
      std::size_t used = 0;
      const int value = std::stoi(token, &used);
      require(used == token.size() && value >= 0, "BadInput",
              "malformed integer in " + what + ": " + token);
      values.push_back(value);
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw Error("BadInput", "malformed integer in " + what + ": " + token);
    }
  }
  return values;
}

// One line of cycle notation, e.g. "(0 1)(2 3 4)"; commas count as spaces.
// Cycles apply right-to-left, matching the composition convention
// (p*q)(x) = p(q(x)); disjoint cycles commute so the order rarely matters.
std::vector<std::vector<int>> parse_cycles(const std::string& line) {
  std::vector<std::vector<int>> cycles;
  std::string::size_type pos = 0;
  while (pos < line.size()) {
    const char c = line[pos];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      ++pos;
      continue;
    }
    require(c == '(', "BadInput", "expected '(' in cycle notation: " + line);
    const auto close = line.find(')', pos);
    require(close != std::string::npos, "BadInput",
            "unbalanced '(' in cycle notation: " + line);
    std::string inner = line.substr(pos + 1, close - pos - 1);
    for (char& ch : inner)
      if (ch == ',') ch = ' ';
    cycles.push_back(parse_ints(inner, "cycle notation"));
    pos = close + 1;
  }
  return cycles;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "BadInput", "cannot open file: " + path);
  Json j = Json::parse(in, nullptr, /*allow_exceptions=*/false);
  require(!j.is_discarded(), "BadInput", "malformed JSON in " + path);
  return j;
}

CMat complex_matrix_from_json(const Json& row_major, int rows, int cols,
                              const std::string& what) {
  require(row_major.is_array() &&
              row_major.size() == static_cast<std::size_t>(2 * rows * cols),
          "BadInput", what + " must hold " + std::to_string(2 * rows * cols) +
                          " interleaved re/im numbers");
  CMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const std::size_t k = 2 * (static_cast<std::size_t>(i) * cols + j);
      require(row_major[k].is_number() && row_major[k + 1].is_number(),
              "BadInput", what + " entries must be numbers");
      m(i, j) = cplx(row_major[k].get<double>(), row_major[k + 1].get<double>());
    }
  return m;
}

}  // namespace

Graph read_graph_file(const std::string& path) {
  const std::vector<std::string> lines = content_lines(path);
  require(!lines.empty(), "BadInput", "empty graph file: " + path);
  const std::vector<int> header = parse_ints(lines[0], "graph header");
  require(header.size() == 2, "BadInput",
          "graph header must be \"n m\": " + path);
  const int n = header[0];
  const int m = header[1];
  require(static_cast<int>(lines.size()) == m + 1, "BadInput",
          "expected " + std::to_string(m) + " edge lines in " + path);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(m);
  for (int i = 1; i <= m; ++i) {
    const std::vector<int> edge = parse_ints(lines[i], "edge line");
    require(edge.size() == 2, "BadInput",
            "edge lines must be \"u v\": " + lines[i]);
    edges.emplace_back(edge[0], edge[1]);
  }
  return Graph::from_edges(n, std::move(edges));
}

FiniteGroup read_group_file(const std::string& path) {
  const std::vector<std::string> lines = content_lines(path);
  require(!lines.empty(), "BadInput", "empty group file: " + path);

  if (lines[0].find('(') != std::string::npos) {
    // Cycle-notation generators: first find the common ground set size.
    std::vector<std::vector<std::vector<int>>> generators;
    int points = 0;
    for (const std::string& line : lines) {
      generators.push_back(parse_cycles(line));
      for (const auto& cycle : generators.back())
        for (int p : cycle) points = std::max(points, p + 1);
    }
    require(points > 0, "BadInput", "no points in cycle notation: " + path);
    std::vector<std::vector<int>> perms;
    for (const auto& cycles : generators) {
      std::vector<int> perm(points);
      for (int i = 0; i < points; ++i) perm[i] = i;
      for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
        const std::vector<int>& cycle = *it;
        std::vector<int> step(points);
        for (int i = 0; i < points; ++i) step[i] = i;
        for (std::size_t i = 0; i < cycle.size(); ++i) {
          require(cycle[i] < points, "BadInput", "cycle point out of range");
          step[cycle[i]] = cycle[(i + 1) % cycle.size()];
        }
        std::vector<int> composed(points);
        for (int i = 0; i < points; ++i) composed[i] = step[perm[i]];
        perm = std::move(composed);
      }
      perms.push_back(std::move(perm));
    }
    return FiniteGroup::from_permutation_generators(perms);
  }

  // Multiplication table: n lines of n element indices.
  std::vector<std::vector<int>> table;
  for (const std::string& line : lines) {
    std::string spaced = line;
    for (char& c : spaced)
      if (c == ',') c = ' ';
    table.push_back(parse_ints(spaced, "multiplication table"));
  }
  const std::size_t n = table.size();
  for (const auto& row : table)
    require(row.size() == n, "BadInput",
            "multiplication table must be square: " + path);
  return FiniteGroup::from_mult_table(table);
}

Channel read_channel_file(const std::string& path) {
  const Json j = read_json_file(path);
  require(j.is_object() && j.contains("dim") && j.contains("kraus"),
          "BadInput", "channel JSON needs \"dim\" and \"kraus\": " + path);
  require(j["dim"].is_number_integer() && j["dim"].get<int>() > 0, "BadInput",
          "channel \"dim\" must be a positive integer");
  const int dim = j["dim"].get<int>();
  require(j["kraus"].is_array() && !j["kraus"].empty(), "BadInput",
          "channel \"kraus\" must be a nonempty array");
  std::vector<CMat> kraus;
  for (const Json& row : j["kraus"])
    kraus.push_back(complex_matrix_from_json(row, dim, dim, "kraus operator"));
  return Channel::from_kraus(dim, std::move(kraus));
}

std::vector<int> parse_index_list(const std::string& csv) {
  std::string spaced = csv;
  for (char& c : spaced)
    if (c == ',') c = ' ';
  const std::vector<int> values = parse_ints(spaced, "index list");
  require(!values.empty(), "BadInput", "empty index list: " + csv);
  return values;
}

Json complex_matrix_json(const CMat& m) {
  Json out = Json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      out.push_back(m(i, j).real());
      out.push_back(m(i, j).imag());
    }
  return out;
}

Json channel_json(const Channel& phi) {
  Json out;
  out["dim"] = phi.dim;
  out["kraus"] = Json::array();
  for (const CMat& k : phi.kraus) out["kraus"].push_back(complex_matrix_json(k));
  return out;
}

Json quantum_graph_json(const QuantumGraph& qg) {
  Json out;
  out["blocks"] = qg.algebra.block_dims();
  out["A"] = complex_matrix_json(qg.A);
  return out;
}

Json irrep_json(const Irrep& pi) {
  Json out;
  out["dimension"] = pi.dimension;
  out["matrices"] = Json::array();
  for (const CMat& m : pi.matrices) out["matrices"].push_back(complex_matrix_json(m));
  return out;
}

}  // namespace qexpand
