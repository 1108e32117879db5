#pragma once

#include <set>
#include <stdexcept>
#include <vector>

#include "smm/graph.hpp"

namespace smm {

/// Per query node, the sorted target nodes it may be mapped to.
struct DomainMap {
  std::vector<std::vector<NodeId>> nodes;

  std::size_t size() const { return nodes.size(); }
  const std::vector<NodeId>& operator[](NodeId q) const { return nodes[q]; }
  std::vector<NodeId>& operator[](NodeId q) { return nodes[q]; }
  bool any_empty() const {
    for (const auto& d : nodes)
      if (d.empty()) return true;
    return false;
  }
  friend bool operator==(const DomainMap&, const DomainMap&) = default;
};

inline void require_same_directedness(const LabeledMultigraph& query, const LabeledMultigraph& target) {
  if (query.directed() != target.directed())
    throw std::invalid_argument("query and target must both be directed or both undirected");
}

/// t is compatible with q iff labels(q) is a subset of labels(t) and q's
/// degree does not exceed t's (out- and in-degree too, when directed).
inline bool compatible(const LabeledMultigraph& query, NodeId q, const LabeledMultigraph& target, NodeId t) {
  if (query.degree(q) > target.degree(t)) return false;
  if (query.directed() && (query.out_degree(q) > target.out_degree(t) || query.in_degree(q) > target.in_degree(t)))
    return false;
  return labels_subset(query.labels(q), target.labels(t));
}

inline DomainMap compute_domains(const LabeledMultigraph& query, const LabeledMultigraph& target) {
  require_same_directedness(query, target);
  DomainMap dom;
  dom.nodes.resize(query.node_count());
  for (NodeId t = 0; t < target.node_count(); ++t) {
    for (NodeId q = 0; q < query.node_count(); ++q) {
      if (compatible(query, q, target, t)) dom[q].push_back(t);
    }
  }
  return dom;
}

namespace detail {

// Binary constraint between q and one adjacent query node: the image of q
// must reach the image of `other` with at least `out` labels and be reached
// from it with at least `in` labels.
struct PairConstraint {
  NodeId other;
  LabelSet out;
  LabelSet in;
};

struct QueryConstraints {
  std::vector<std::vector<PairConstraint>> pairs;
  std::vector<LabelSet> self_loop;
};

inline QueryConstraints collect_constraints(const LabeledMultigraph& query) {
  QueryConstraints c;
  c.pairs.resize(query.node_count());
  c.self_loop.resize(query.node_count());
  for (NodeId q = 0; q < query.node_count(); ++q) {
    for (NodeId other : query.neighbors(q)) {
      PairConstraint pc{other, {}, {}};
      for (const Arc& a : query.arcs_between(q, other)) pc.out.push_back(a.label);
      if (query.directed())
        for (const Arc& a : query.arcs_between(other, q)) pc.in.push_back(a.label);
      if (other == q) {
        c.self_loop[q] = pc.out;
        continue;
      }
      c.pairs[q].push_back(std::move(pc));
    }
  }
  return c;
}

}  // namespace detail

/// Arc consistency to a fixpoint. A target t stays in Dom(q) only if every
/// query neighbor q' of q has some t' in Dom(q') such that the target pair
/// (t, t') carries all labels the query pair (q, q') carries, in both
/// orientations. Worklist pops query nodes in ascending id order.
inline DomainMap arc_consistency(const LabeledMultigraph& query, const LabeledMultigraph& target, DomainMap dom) {
  require_same_directedness(query, target);
  const std::size_t nq = query.node_count();
  const std::size_t nt = target.node_count();
  if (dom.size() != nq) throw std::invalid_argument("domain map does not match query size");
  const auto cons = detail::collect_constraints(query);

  std::vector<std::vector<char>> member(nq, std::vector<char>(nt, 0));
  for (NodeId q = 0; q < nq; ++q)
    for (NodeId t : dom[q]) member[q][t] = 1;

  auto supported = [&](NodeId t, const detail::PairConstraint& pc) {
    for (NodeId t2 : target.neighbors(t)) {
      if (t2 == t || !member[pc.other][t2]) continue;
      if (!target.has_edge_labels(t, t2, pc.out)) continue;
      if (!pc.in.empty() && !target.has_edge_labels(t2, t, pc.in)) continue;
      return true;
    }
    return false;
  };

  std::set<NodeId> work;
  for (NodeId q = 0; q < nq; ++q) work.insert(q);
  std::vector<char> self_checked(nq, 0);
  while (!work.empty()) {
    const NodeId q = *work.begin();
    work.erase(work.begin());
    auto& d = dom[q];
    const std::size_t before = d.size();
    std::vector<NodeId> kept;
    kept.reserve(d.size());
    for (NodeId t : d) {
      bool ok = self_checked[q] || target.has_edge_labels(t, t, cons.self_loop[q]);
      for (const auto& pc : cons.pairs[q]) {
        if (!ok) break;
        ok = supported(t, pc);
      }
      if (ok) {
        kept.push_back(t);
      } else {
        member[q][t] = 0;
      }
    }
    self_checked[q] = 1;
    d = std::move(kept);
    if (d.size() != before)
      for (const auto& pc : cons.pairs[q]) work.insert(pc.other);
  }
  return dom;
}

}  // namespace smm
