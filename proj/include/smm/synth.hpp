#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "smm/graph.hpp"
#include "smm/rng.hpp"

namespace smm {

struct SynthConfig {
  std::size_t nodes = 100;
  std::size_t density = 5;      // new distinct pairs per arriving node
  std::size_t node_labels = 1;  // alphabet size
  std::size_t max_node_multiplicity = 1;
  std::size_t edge_labels = 1;
  std::size_t max_edge_multiplicity = 1;
  std::uint64_t seed = 1;

  void validate() const {
    if (nodes < 1 || density < 1 || node_labels < 1 || max_node_multiplicity < 1 || edge_labels < 1 ||
        max_edge_multiplicity < 1)
      throw std::invalid_argument("synthetic graph parameters must all be >= 1");
    if (density >= nodes) throw std::invalid_argument("density must be smaller than the node count");
    if (max_node_multiplicity > node_labels)
      throw std::invalid_argument("max node multiplicity exceeds the node label alphabet");
    if (max_edge_multiplicity > edge_labels)
      throw std::invalid_argument("max edge multiplicity exceeds the edge label alphabet");
  }
};

namespace detail {

// m distinct values from 1..alphabet, m uniform in 1..max_multiplicity.
inline std::vector<std::size_t> draw_label_values(Rng& rng, std::size_t alphabet, std::size_t max_multiplicity) {
  const std::size_t m = rng.between(1, max_multiplicity);
  std::vector<std::size_t> pool(alphabet);
  std::iota(pool.begin(), pool.end(), std::size_t{1});
  for (std::size_t i = 0; i < m; ++i) std::swap(pool[i], pool[i + rng.below(alphabet - i)]);
  pool.resize(m);
  return pool;
}

}  // namespace detail

/// Undirected preferential-attachment multigraph. Starts from one node; each
/// arriving node links to min(density, existing) distinct earlier nodes drawn
/// with probability proportional to degree + 1. Node labels: multiplicity m
/// uniform in 1..NM, then m distinct labels from "1".."sigma". Each linked
/// pair gets its edge labels the same way from 1..gamma and 1..EM.
inline LabeledMultigraph generate_ba_multigraph(const SynthConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  LabeledMultigraph g(Directedness::kUndirected);
  for (std::size_t i = 1; i <= cfg.node_labels; ++i) g.node_dict().intern(std::to_string(i));
  for (std::size_t i = 1; i <= cfg.edge_labels; ++i) g.edge_dict().intern(std::to_string(i));

  auto add_labeled_node = [&]() {
    LabelSet ids;
    for (auto v : detail::draw_label_values(rng, cfg.node_labels, cfg.max_node_multiplicity))
      ids.push_back(static_cast<LabelId>(v - 1));
    return g.add_node(ids);
  };

  // Each node appears degree + 1 times.
  std::vector<NodeId> urn;
  urn.reserve(cfg.nodes * (2 * cfg.density + 1));
  urn.push_back(add_labeled_node());
  std::vector<char> picked(cfg.nodes, 0);
  std::vector<NodeId> chosen;
  for (std::size_t i = 1; i < cfg.nodes; ++i) {
    const NodeId u = add_labeled_node();
    const std::size_t m = std::min(cfg.density, i);
    chosen.clear();
    if (m == i) {
      for (NodeId v = 0; v < i; ++v) chosen.push_back(v);
    } else {
      while (chosen.size() < m) {
        const NodeId v = urn[rng.below(urn.size())];
        if (picked[v]) continue;
        picked[v] = 1;
        chosen.push_back(v);
      }
      for (NodeId v : chosen) picked[v] = 0;
    }
    for (NodeId v : chosen) {
      for (auto l : detail::draw_label_values(rng, cfg.edge_labels, cfg.max_edge_multiplicity))
        g.add_edge(v, u, static_cast<LabelId>(l - 1));
      urn.push_back(v);
    }
    urn.insert(urn.end(), m + 1, u);
  }
  g.freeze();
  return g;
}

/// Weakly connected components, each sorted, ordered by smallest member.
inline std::vector<std::vector<NodeId>> connected_components(const LabeledMultigraph& g) {
  std::vector<std::vector<NodeId>> out;
  std::vector<char> seen(g.node_count(), 0);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (seen[s]) continue;
    out.emplace_back();
    seen[s] = 1;
    stack.assign(1, s);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      out.back().push_back(u);
      for (NodeId v : g.neighbors(u)) {
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

struct QueryExtractConfig {
  std::size_t nodes = 4;
  std::uint64_t seed = 1;
};

inline constexpr double kRestartProbability = 0.15;

/// A query cut out of a graph; embedding[q] is the graph node behind q.
struct ExtractedQuery {
  LabeledMultigraph query;
  std::vector<NodeId> embedding;
};

/// Random-walk query extraction:
///  1. collect the components with at least k nodes and pick one uniformly;
///  2. pick a start node uniformly in it;
///  3. walk (restarting at the start with probability 0.15 per step, otherwise
///     following a uniformly chosen incident edge) until k distinct nodes are
///     visited;
///  4. keep the visited nodes and traversed edges;
///  5. let R be the other graph edges among the kept nodes, draw r uniform in
///     0..|R| and add r of them chosen without replacement.
/// Query ids follow first-visit order; query labels share the graph's ids.
inline ExtractedQuery extract_query(const LabeledMultigraph& g, const QueryExtractConfig& cfg) {
  if (cfg.nodes < 1) throw std::invalid_argument("query size must be >= 1");
  std::vector<std::vector<NodeId>> eligible;
  for (auto& c : connected_components(g))
    if (c.size() >= cfg.nodes) eligible.push_back(std::move(c));
  if (eligible.empty()) throw std::invalid_argument("no connected component has " + std::to_string(cfg.nodes) + " nodes");

  Rng rng(cfg.seed);
  const auto& comp = eligible[rng.below(eligible.size())];
  const NodeId start = comp[rng.below(comp.size())];

  std::vector<NodeId> local(g.node_count(), kNoNode);
  std::vector<NodeId> visited;
  std::set<std::tuple<NodeId, NodeId, LabelId>> walked;
  auto visit = [&](NodeId v) {
    if (local[v] == kNoNode) {
      local[v] = static_cast<NodeId>(visited.size());
      visited.push_back(v);
    }
  };
  visit(start);
  NodeId current = start;
  while (visited.size() < cfg.nodes) {
    if (rng.unit() < kRestartProbability) {
      current = start;
      continue;
    }
    auto out = g.out_arcs(current);
    auto in = g.directed() ? g.in_arcs(current) : std::span<const Arc>{};
    const std::size_t total = out.size() + in.size();
    if (total == 0) continue;  // unreachable: the component has >= 2 nodes here
    const std::size_t pick = rng.below(total);
    NodeId next;
    if (pick < out.size()) {
      next = out[pick].node;
      walked.emplace(current, next, out[pick].label);
    } else {
      next = in[pick - out.size()].node;
      walked.emplace(next, current, in[pick - out.size()].label);
    }
    visit(next);
    current = next;
  }

  auto canonical = [&](NodeId a, NodeId b, LabelId l) {
    if (!g.directed() && b < a) std::swap(a, b);
    return std::tuple(a, b, l);
  };
  std::set<std::tuple<NodeId, NodeId, LabelId>> kept;
  for (auto [a, b, l] : walked) kept.insert(canonical(a, b, l));

  std::vector<std::tuple<NodeId, NodeId, LabelId>> remaining;
  std::vector<NodeId> sorted_nodes = visited;
  std::sort(sorted_nodes.begin(), sorted_nodes.end());
  for (NodeId a : sorted_nodes) {
    for (const Arc& arc : g.out_arcs(a)) {
      if (local[arc.node] == kNoNode) continue;
      auto e = canonical(a, arc.node, arc.label);
      if (std::get<0>(e) != a) continue;  // undirected: list once
      if (!kept.count(e)) remaining.push_back(e);
    }
  }
  std::sort(remaining.begin(), remaining.end());
  const std::size_t r = rng.below(remaining.size() + 1);
  for (std::size_t i = 0; i < r; ++i) {
    std::swap(remaining[i], remaining[i + rng.below(remaining.size() - i)]);
    kept.insert(remaining[i]);
  }

  ExtractedQuery out{LabeledMultigraph(g.directed() ? Directedness::kDirected : Directedness::kUndirected),
                     visited};
  out.query.node_dict() = g.node_dict();
  out.query.edge_dict() = g.edge_dict();
  for (NodeId v : visited) out.query.add_node(g.labels(v));
  for (auto [a, b, l] : kept) out.query.add_edge(local[a], local[b], l);
  out.query.freeze();
  return out;
}

enum class Topology { kPath, kStar, kClique };

inline std::optional<Topology> parse_topology(std::string_view s) {
  if (s == "path") return Topology::kPath;
  if (s == "star") return Topology::kStar;
  if (s == "clique") return Topology::kClique;
  return std::nullopt;
}

inline const char* to_string(Topology t) {
  switch (t) {
    case Topology::kPath: return "path";
    case Topology::kStar: return "star";
    case Topology::kClique: return "clique";
  }
  return "?";
}

/// Path 0-1-...-(k-1), star centered at 0, or k-clique. Every node carries
/// `node_label` (none when empty), every edge `edge_label`.
inline LabeledMultigraph make_topology_query(Topology kind, std::size_t k, std::string_view node_label = {},
                                             std::string_view edge_label = "1") {
  if (k < 2) throw std::invalid_argument("topology queries need at least 2 nodes");
  if (kind == Topology::kStar && k < 3) throw std::invalid_argument("a star needs at least 3 nodes");
  LabeledMultigraph g(Directedness::kUndirected);
  LabelSet labels;
  if (!node_label.empty()) labels.push_back(g.node_dict().intern(node_label));
  for (std::size_t i = 0; i < k; ++i) g.add_node(labels);
  const LabelId el = g.edge_dict().intern(edge_label);
  for (NodeId a = 0; a < k; ++a) {
    for (NodeId b = a + 1; b < k; ++b) {
      const bool link = kind == Topology::kClique || (kind == Topology::kPath && b == a + 1) ||
                        (kind == Topology::kStar && a == 0);
      if (link) g.add_edge(a, b, el);
    }
  }
  g.freeze();
  return g;
}

}  // namespace smm
