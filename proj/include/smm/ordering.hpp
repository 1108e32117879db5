#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

#include "smm/graph.hpp"
#include "smm/rng.hpp"

namespace smm {

/// Scores of the node chosen at one step of the greedy ordering.
struct OrderingStep {
  NodeId node;
  std::size_t vis;
  std::size_t neig;
  std::size_t unv;
};

/// Static search order over query nodes. parent[q] is the earliest node in
/// the order adjacent to q, or kNoNode.
struct NodeOrdering {
  std::vector<NodeId> order;
  std::vector<NodeId> parent;
  std::vector<OrderingStep> steps;

  std::size_t size() const { return order.size(); }
};

/// Greedy ordering: at each step take the unordered node maximizing, in
/// lexicographic priority,
///   vis  = ordered neighbors of q,
///   neig = ordered non-neighbors of q adjacent to an unordered neighbor of q,
///   unv  = unordered neighbors of q not adjacent to any ordered node.
/// Remaining ties go to the lowest id, or to a uniformly random candidate
/// when `tie_seed` is set.
inline NodeOrdering order_query_nodes(const LabeledMultigraph& query, std::optional<std::uint64_t> tie_seed = {}) {
  const std::size_t n = query.node_count();
  NodeOrdering out;
  out.parent.assign(n, kNoNode);
  if (n == 0) return out;

  std::optional<Rng> rng;
  if (tie_seed) rng.emplace(*tie_seed);

  std::vector<char> ordered(n, 0);
  std::vector<char> near_ordered(n, 0);  // in N(order)
  std::vector<std::size_t> position(n, 0);
  std::vector<char> is_nbr(n, 0);
  std::vector<char> near_unordered_nbr(n, 0);

  while (out.order.size() < n) {
    std::vector<OrderingStep> best;
    for (NodeId q = 0; q < n; ++q) {
      if (ordered[q]) continue;
      std::fill(is_nbr.begin(), is_nbr.end(), 0);
      std::fill(near_unordered_nbr.begin(), near_unordered_nbr.end(), 0);
      for (NodeId x : query.neighbors(q)) is_nbr[x] = 1;
      for (NodeId x : query.neighbors(q)) {
        if (x == q || ordered[x]) continue;
        for (NodeId y : query.neighbors(x)) near_unordered_nbr[y] = 1;
      }
      OrderingStep s{q, 0, 0, 0};
      for (NodeId other = 0; other < n; ++other) {
        if (other == q) continue;
        if (ordered[other]) {
          if (is_nbr[other]) {
            ++s.vis;
          } else if (near_unordered_nbr[other]) {
            ++s.neig;
          }
        } else if (is_nbr[other] && !near_ordered[other]) {
          ++s.unv;
        }
      }
      auto key = [](const OrderingStep& a) { return std::tuple(a.vis, a.neig, a.unv); };
      if (best.empty() || key(s) > key(best.front())) {
        best.assign(1, s);
      } else if (key(s) == key(best.front())) {
        best.push_back(s);
      }
    }
    const OrderingStep pick = rng ? best[rng->below(best.size())] : best.front();
    const NodeId q = pick.node;
    position[q] = out.order.size();
    for (NodeId x : query.neighbors(q)) {
      if (x != q && ordered[x] && (out.parent[q] == kNoNode || position[x] < position[out.parent[q]]))
        out.parent[q] = x;
    }
    out.order.push_back(q);
    out.steps.push_back(pick);
    ordered[q] = 1;
    for (NodeId x : query.neighbors(q)) near_ordered[x] = 1;
  }
  return out;
}

}  // namespace smm
