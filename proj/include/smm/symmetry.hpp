#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "smm/graph.hpp"

namespace smm {

class SymmetryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxSymmetryNodes = 20;
inline constexpr std::size_t kMaxAutomorphisms = std::size_t{1} << 22;

/// Rows are permutations: rows[i][j] is the image of node j under the i-th
/// automorphism. Rows are kept in lexicographic order.
struct AutomorphismMatrix {
  std::vector<std::vector<NodeId>> rows;

  std::size_t size() const { return rows.size(); }
  std::size_t columns() const { return rows.empty() ? 0 : rows.front().size(); }
  friend bool operator==(const AutomorphismMatrix&, const AutomorphismMatrix&) = default;
};

struct OrbitPartition {
  std::vector<std::size_t> orbit_of;          // node -> orbit index
  std::vector<std::vector<NodeId>> orbits;  // ordered by smallest member

  const std::vector<NodeId>& orbit(NodeId q) const { return orbits[orbit_of[q]]; }
};

/// Pairs (a, b) meaning the image of a must have a smaller id than the
/// image of b. Always a < b.
struct BreakingConditionSet {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::vector<std::vector<NodeId>> must_be_below;  // q -> nodes whose image is below q's
  std::vector<std::vector<NodeId>> must_be_above;  // q -> nodes whose image is above q's

  bool empty() const { return pairs.empty(); }
  std::size_t size() const { return pairs.size(); }

  static BreakingConditionSet from_pairs(std::size_t node_count, std::vector<std::pair<NodeId, NodeId>> pairs) {
    BreakingConditionSet c;
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    c.must_be_below.resize(node_count);
    c.must_be_above.resize(node_count);
    for (auto [a, b] : pairs) {
      if (a >= b || b >= node_count) throw std::invalid_argument("breaking condition must satisfy a < b < n");
      c.must_be_above[a].push_back(b);
      c.must_be_below[b].push_back(a);
    }
    c.pairs = std::move(pairs);
    return c;
  }

  bool holds(std::span<const NodeId> image) const {
    return std::all_of(pairs.begin(), pairs.end(), [&](auto p) { return image[p.first] < image[p.second]; });
  }
};

namespace detail {

inline bool same_arc_labels(std::span<const Arc> a, std::span<const Arc> b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](const Arc& x, const Arc& y) { return x.label == y.label; });
}

}  // namespace detail

/// All label- and edge-preserving permutations, by backtracking over nodes in
/// id order. Candidate images must carry the identical label set and degree
/// profile; each new assignment is checked against every earlier one, in
/// both orientations, so an accepted permutation preserves every pair's
/// edge-label set exactly.
inline AutomorphismMatrix compute_automorphism_matrix(const LabeledMultigraph& g) {
  const std::size_t n = g.node_count();
  if (n > kMaxSymmetryNodes)
    throw SymmetryError("query too large for symmetry analysis (" + std::to_string(n) + " nodes, limit " +
                        std::to_string(kMaxSymmetryNodes) + ")");
  AutomorphismMatrix out;
  if (n == 0) return out;

  std::vector<std::vector<NodeId>> options(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      if (!labels_equal(g.labels(u), g.labels(v))) continue;
      if (g.degree(u) != g.degree(v) || g.out_degree(u) != g.out_degree(v) || g.in_degree(u) != g.in_degree(v))
        continue;
      if (!detail::same_arc_labels(g.arcs_between(u, u), g.arcs_between(v, v))) continue;
      options[u].push_back(v);
    }
  }

  std::vector<NodeId> image(n, kNoNode);
  std::vector<char> used(n, 0);
  std::vector<std::size_t> cursor(n, 0);
  std::size_t depth = 0;
  auto consistent = [&](NodeId u, NodeId v) {
    for (NodeId w = 0; w < u; ++w) {
      if (!detail::same_arc_labels(g.arcs_between(w, u), g.arcs_between(image[w], v))) return false;
      if (g.directed() && !detail::same_arc_labels(g.arcs_between(u, w), g.arcs_between(v, image[w]))) return false;
    }
    return true;
  };
  while (true) {
    bool advanced = false;
    while (cursor[depth] < options[depth].size()) {
      const NodeId v = options[depth][cursor[depth]++];
      if (used[v] || !consistent(static_cast<NodeId>(depth), v)) continue;
      image[depth] = v;
      used[v] = 1;
      advanced = true;
      break;
    }
    if (advanced) {
      if (depth + 1 == n) {
        out.rows.push_back(image);
        if (out.rows.size() > kMaxAutomorphisms) throw SymmetryError("automorphism group too large to enumerate");
        used[image[depth]] = 0;
        image[depth] = kNoNode;
      } else {
        cursor[++depth] = 0;
      }
      continue;
    }
    if (depth == 0) break;
    --depth;
    used[image[depth]] = 0;
    image[depth] = kNoNode;
  }
  return out;
}

/// Nodes whose columns contain the same set of images form one orbit.
inline OrbitPartition compute_orbits(const AutomorphismMatrix& a) {
  const std::size_t n = a.columns();
  OrbitPartition p;
  p.orbit_of.assign(n, 0);
  std::map<std::vector<NodeId>, std::size_t> by_column;
  for (NodeId j = 0; j < n; ++j) {
    std::vector<NodeId> col;
    col.reserve(a.size());
    for (const auto& row : a.rows) col.push_back(row[j]);
    std::sort(col.begin(), col.end());
    col.erase(std::unique(col.begin(), col.end()), col.end());
    auto [it, inserted] = by_column.emplace(std::move(col), p.orbits.size());
    if (inserted) p.orbits.emplace_back();
    p.orbit_of[j] = it->second;
    p.orbits[it->second].push_back(j);
  }
  return p;
}

/// One pass of the condition loop, kept for inspection and tests.
struct BreakingStep {
  NodeId fixed;
  std::vector<NodeId> orbit;  // orbit of `fixed` when it was chosen
  std::size_t rows_before;
  std::size_t rows_after;
};

struct BreakingTrace {
  BreakingConditionSet conditions;
  std::vector<BreakingStep> steps;
};

/// While more than one automorphism remains: take the smallest node lying in
/// an orbit of size >= 2, require it to map below every other member of that
/// orbit, keep only the automorphisms fixing it, and recompute orbits.
inline BreakingTrace trace_symm_break_cond(AutomorphismMatrix a) {
  const std::size_t n = a.columns();
  std::vector<std::pair<NodeId, NodeId>> pairs;
  BreakingTrace trace;
  auto orbits = compute_orbits(a);
  while (a.size() > 1) {
    NodeId pivot = kNoNode;
    for (NodeId q = 0; q < n; ++q) {
      if (orbits.orbit(q).size() > 1) {
        pivot = q;
        break;
      }
    }
    // More than one distinct row always moves some node.
    if (pivot == kNoNode) throw SymmetryError("automorphism matrix has duplicate rows");
    BreakingStep step{pivot, orbits.orbit(pivot), a.size(), 0};
    for (NodeId q : orbits.orbit(pivot))
      if (q != pivot) pairs.emplace_back(pivot, q);
    std::erase_if(a.rows, [pivot](const auto& row) { return row[pivot] != pivot; });
    step.rows_after = a.size();
    trace.steps.push_back(std::move(step));
    orbits = compute_orbits(a);
  }
  trace.conditions = BreakingConditionSet::from_pairs(n, std::move(pairs));
  return trace;
}

inline BreakingConditionSet compute_symm_break_cond(const AutomorphismMatrix& a) {
  return trace_symm_break_cond(a).conditions;
}

inline BreakingConditionSet compute_symm_break_cond(const LabeledMultigraph& query) {
  return compute_symm_break_cond(compute_automorphism_matrix(query));
}

}  // namespace smm
