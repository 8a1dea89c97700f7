#include "treerep/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace treerep {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::string format_real(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

double parse_real(std::string_view token, std::size_t line) {
  while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) token.remove_prefix(1);
  while (!token.empty() && (token.back() == ' ' || token.back() == '\t' || token.back() == '\r')) {
    token.remove_suffix(1);
  }
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
    throw ParseError(line, "invalid number '" + std::string(token) + "'");
  }
  return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return in;
}

std::vector<std::string> tokens_of(const std::string& raw) {
  std::string line = raw.substr(0, raw.find('#'));
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(tok);
  return out;
}

}  // namespace

DistanceMatrix read_distance_matrix(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto& row = rows.emplace_back();
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      row.push_back(parse_real(std::string_view(line).substr(start, comma - start), lineno));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (rows.size() > 1 && row.size() != rows.front().size()) {
      throw ParseError(lineno, "expected " + std::to_string(rows.front().size()) +
                                   " entries, got " + std::to_string(row.size()));
    }
  }
  if (!rows.empty() && rows.front().size() != rows.size()) {
    throw ParseError(lineno, "matrix is " + std::to_string(rows.size()) + " x " +
                                 std::to_string(rows.front().size()) + ", not square");
  }
  return DistanceMatrix::from_rows(rows);
}

DistanceMatrix read_distance_matrix(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return read_distance_matrix(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_distance_matrix(std::ostream& out, const DistanceMatrix& d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (j) out << ',';
      out << format_real(d(i, j));
    }
    out << '\n';
  }
}

Graph read_edge_list(std::istream& in) {
  Graph g;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = tokens_of(line);
    if (tok.empty()) continue;
    if (tok.size() == 1) {
      g.intern(tok[0]);
      continue;
    }
    if (tok.size() > 3) throw ParseError(lineno, "expected 'u v' or 'u v w'");
    const double w = tok.size() == 3 ? parse_real(tok[2], lineno) : 1.0;
    if (tok[0] == tok[1]) throw ParseError(lineno, "self-loop on '" + tok[0] + "'");
    const std::size_t u = g.intern(tok[0]);
    const std::size_t v = g.intern(tok[1]);
    g.add_edge(u, v, w);
  }
  return g;
}

Graph read_edge_list(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return read_edge_list(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (std::size_t u = 0; u < g.node_count(); ++u) {
    if (g.degree(u) == 0) out << g.name(u) << '\n';
    for (const auto& a : g.neighbors(u)) {
      if (u < a.node) out << g.name(u) << ' ' << g.name(a.node) << ' ' << format_real(a.weight) << '\n';
    }
  }
}

LoadedTree read_tree(std::istream& in, const std::vector<std::string>* labels) {
  struct RawEdge {
    std::string u, v;
    double w;
    std::size_t line;
  };
  std::vector<RawEdge> raw;
  std::vector<std::string> data_names;
  std::vector<std::string> steiner_names;
  std::unordered_map<std::string, std::size_t> data_index;
  std::unordered_map<std::string, std::size_t> steiner_index;

  if (labels) {
    for (std::size_t i = 0; i < labels->size(); ++i) data_index.emplace((*labels)[i], i);
    data_names = *labels;
  }
  std::vector<char> mentioned(data_names.size(), 0);

  auto note = [&](const std::string& name, std::size_t lineno) {
    if (name.rfind("_s", 0) == 0) {
      if (steiner_index.emplace(name, steiner_names.size()).second) steiner_names.push_back(name);
      return;
    }
    if (auto it = data_index.find(name); it != data_index.end()) {
      if (it->second < mentioned.size()) mentioned[it->second] = 1;
      return;
    }
    if (labels) throw ParseError(lineno, "unknown data node '" + name + "'");
    data_index.emplace(name, data_names.size());
    data_names.push_back(name);
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = tokens_of(line);
    if (tok.empty()) continue;
    if (tok.size() > 3) throw ParseError(lineno, "expected 'u v' or 'u v w'");
    note(tok[0], lineno);
    if (tok.size() == 1) continue;
    note(tok[1], lineno);
    raw.push_back({tok[0], tok[1], tok.size() == 3 ? parse_real(tok[2], lineno) : 1.0, lineno});
  }
  if (labels) {
    for (std::size_t i = 0; i < mentioned.size(); ++i) {
      if (!mentioned[i]) {
        throw ParseError(lineno, "data node '" + data_names[i] + "' missing from tree");
      }
    }
  }

  LoadedTree out{WeightedTree(data_names.size()), data_names};
  for (std::size_t s = 0; s < steiner_names.size(); ++s) out.tree.add_steiner();
  auto id_of = [&](const std::string& name) {
    if (auto it = steiner_index.find(name); it != steiner_index.end()) {
      return data_names.size() + it->second;
    }
    return data_index.at(name);
  };
  for (const auto& e : raw) {
    const std::size_t u = id_of(e.u);
    const std::size_t v = id_of(e.v);
    if (u == v) throw ParseError(e.line, "self-loop on '" + e.u + "'");
    out.tree.add_edge(u, v, e.w);
  }
  out.tree.validate();
  return out;
}

LoadedTree read_tree(const std::filesystem::path& path, const std::vector<std::string>* labels) {
  auto in = open_input(path);
  try {
    return read_tree(in, labels);
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_tree(std::ostream& out, const WeightedTree& t, const std::vector<std::string>& labels) {
  if (t.edge_count() == 0 && t.node_count() == 1) {
    out << node_name(t, 0, labels) << '\n';
    return;
  }
  for (const auto& e : t.edges()) {
    out << node_name(t, e.u, labels) << ' ' << node_name(t, e.v, labels) << ' '
        << format_real(e.weight) << '\n';
  }
}

}  // namespace treerep
