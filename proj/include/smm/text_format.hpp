#pragma once

// Line-oriented text format:
//
//   multigraph <directed|undirected>
//   v <id> [<label>[,<label>...]]
//   e <src> <dst> <label>
//
// `#` starts a comment. Vertex ids must appear as 0..n-1 in order. A pair
// with multiplicity m appears on m edge lines.

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "smm/graph.hpp"

namespace smm {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool parse_uint(std::string_view s, NodeId& out) {
  if (s.empty() || s.size() > 9) return false;
  NodeId v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<NodeId>(c - '0');
  }
  out = v;
  return true;
}

inline bool valid_label_name(std::string_view s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(), [](char c) { return c == ',' || c == '#' || c == ' ' || c == '\t' || c == '\n' || c == '\r'; });
}

}  // namespace detail

inline LabeledMultigraph parse_graph(std::string_view text) {
  std::optional<LabeledMultigraph> g;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = detail::split_ws(line);
    if (tok.empty()) {
      if (nl == text.size()) break;
      continue;
    }
    if (!g) {
      if (tok.size() != 2 || tok[0] != "multigraph" || (tok[1] != "directed" && tok[1] != "undirected"))
        throw ParseError(line_no, "expected header 'multigraph <directed|undirected>'");
      g.emplace(tok[1] == "directed" ? Directedness::kDirected : Directedness::kUndirected);
      continue;
    }
    if (tok[0] == "v") {
      NodeId id = 0;
      if (tok.size() < 2 || tok.size() > 3 || !detail::parse_uint(tok[1], id))
        throw ParseError(line_no, "malformed vertex line");
      if (id < g->node_count()) throw ParseError(line_no, "duplicate vertex " + std::to_string(id));
      if (id != g->node_count())
        throw ParseError(line_no, "vertex ids must be consecutive; expected " + std::to_string(g->node_count()));
      LabelSet labels;
      if (tok.size() == 3) {
        std::string_view rest = tok[2];
        std::size_t start = 0;
        while (start <= rest.size()) {
          auto comma = rest.find(',', start);
          if (comma == std::string_view::npos) comma = rest.size();
          auto name = rest.substr(start, comma - start);
          if (name.empty()) throw ParseError(line_no, "empty label in vertex line");
          labels.push_back(g->node_dict().intern(name));
          start = comma + 1;
        }
      }
      g->add_node(labels);
    } else if (tok[0] == "e") {
      NodeId u = 0, v = 0;
      if (tok.size() != 4 || !detail::parse_uint(tok[1], u) || !detail::parse_uint(tok[2], v))
        throw ParseError(line_no, "malformed edge line");
      if (u >= g->node_count() || v >= g->node_count())
        throw ParseError(line_no, "edge references undeclared vertex");
      g->add_named_edge(u, v, tok[3]);
    } else {
      throw ParseError(line_no, "unknown record '" + std::string(tok[0]) + "'");
    }
    if (nl == text.size()) break;
  }
  if (!g) throw ParseError(line_no, "missing header");
  return std::move(*g);
}

/// Canonical form: vertices ascending with label names sorted, then edges
/// sorted by (src, dst, label name). Undirected edges are written once
/// with src <= dst.
inline std::string serialize_graph(const LabeledMultigraph& g) {
  std::string out = g.directed() ? "multigraph directed\n" : "multigraph undirected\n";
  auto checked = [](const std::string& name) -> const std::string& {
    if (!detail::valid_label_name(name)) throw GraphError("label '" + name + "' cannot be serialized");
    return name;
  };
  for (NodeId u = 0; u < g.node_count(); ++u) {
    std::vector<std::string> names;
    for (LabelId l : g.labels(u)) names.push_back(checked(g.node_dict().name(l)));
    std::sort(names.begin(), names.end());
    out += "v " + std::to_string(u);
    for (std::size_t i = 0; i < names.size(); ++i) out += (i == 0 ? " " : ",") + names[i];
    out += '\n';
  }
  std::vector<std::tuple<NodeId, NodeId, std::string>> edges;
  for (auto [u, v, l] : g.edges()) edges.emplace_back(u, v, checked(g.edge_dict().name(l)));
  std::sort(edges.begin(), edges.end());
  for (const auto& [u, v, name] : edges) out += "e " + std::to_string(u) + " " + std::to_string(v) + " " + name + "\n";
  return out;
}

inline LabeledMultigraph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

inline void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace smm
