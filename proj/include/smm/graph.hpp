#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace smm {

using NodeId = std::uint32_t;
using LabelId = std::uint32_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Sorted, duplicate-free set of label ids.
using LabelSet = std::vector<LabelId>;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline LabelSet make_label_set(std::span<const LabelId> labels) {
  LabelSet out(labels.begin(), labels.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Subset test used by matching: every label of `small` appears in `big`.
/// Both inputs must be sorted.
inline bool labels_subset(std::span<const LabelId> small, std::span<const LabelId> big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

/// Exact equality used by automorphism detection. Kept distinct from
/// labels_subset so the two predicates are never swapped by accident.
inline bool labels_equal(std::span<const LabelId> a, std::span<const LabelId> b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

/// Bijection between label strings and dense ids 0..size()-1.
class LabelDictionary {
 public:
  LabelId intern(std::string_view name) {
    auto it = index_.find(std::string(name));
    if (it != index_.end()) return it->second;
    const auto id = static_cast<LabelId>(names_.size());
    names_.emplace_back(name);
    index_.emplace(names_.back(), id);
    return id;
  }

  std::optional<LabelId> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& name(LabelId id) const {
    if (id >= names_.size()) throw GraphError("unknown label id " + std::to_string(id));
    return names_[id];
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, LabelId> index_;
};

enum class Directedness { kUndirected, kDirected };

/// One stored adjacency entry: the other endpoint plus the edge label.
struct Arc {
  NodeId node;
  LabelId label;
  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Labeled multigraph: each node carries a label set, each ordered node pair
/// carries a set of edge labels. Undirected edges are stored in both
/// endpoints' out lists. Mutable until freeze().
class LabeledMultigraph {
 public:
  explicit LabeledMultigraph(Directedness d = Directedness::kUndirected) : directed_(d == Directedness::kDirected) {}

  bool directed() const { return directed_; }
  bool frozen() const { return frozen_; }
  void freeze() { frozen_ = true; }

  std::size_t node_count() const { return node_labels_.size(); }

  /// Number of distinct (u, v, l) triples. Undirected edges count once.
  std::size_t edge_count() const { return edge_count_; }

  NodeId add_node(std::span<const LabelId> labels = {}) {
    check_mutable();
    node_labels_.push_back(make_label_set(labels));
    out_.emplace_back();
    nbrs_.emplace_back();
    if (directed_) {
      in_.emplace_back();
      out_nbrs_.emplace_back();
      in_nbrs_.emplace_back();
    }
    return static_cast<NodeId>(node_labels_.size() - 1);
  }

  NodeId add_node(std::initializer_list<LabelId> labels) {
    return add_node(std::span<const LabelId>(labels.begin(), labels.size()));
  }

  /// Interns each name in the node dictionary.
  NodeId add_named_node(std::initializer_list<std::string_view> names) {
    LabelSet ids;
    for (auto n : names) ids.push_back(node_dict_.intern(n));
    return add_node(ids);
  }

  /// Inserts (u, v, l). Returns false when the triple already exists.
  bool add_edge(NodeId u, NodeId v, LabelId l) {
    check_mutable();
    check_node(u);
    check_node(v);
    if (!insert_sorted(out_[u], Arc{v, l})) return false;
    ++edge_count_;
    if (directed_) {
      insert_sorted(in_[v], Arc{u, l});
      insert_sorted(out_nbrs_[u], v);
      insert_sorted(in_nbrs_[v], u);
      insert_sorted(nbrs_[u], v);
      insert_sorted(nbrs_[v], u);
    } else {
      if (u != v) insert_sorted(out_[v], Arc{u, l});
      insert_sorted(nbrs_[u], v);
      insert_sorted(nbrs_[v], u);
    }
    return true;
  }

  bool add_named_edge(NodeId u, NodeId v, std::string_view label) {
    return add_edge(u, v, edge_dict_.intern(label));
  }

  const LabelSet& labels(NodeId u) const {
    check_node(u);
    return node_labels_[u];
  }

  /// Out arcs sorted by (node, label). For undirected graphs: all incident arcs.
  std::span<const Arc> out_arcs(NodeId u) const {
    check_node(u);
    return out_[u];
  }

  /// In arcs sorted by (node, label); identical to out_arcs when undirected.
  std::span<const Arc> in_arcs(NodeId u) const {
    check_node(u);
    return directed_ ? std::span<const Arc>(in_[u]) : std::span<const Arc>(out_[u]);
  }

  /// N(u): distinct nodes joined to u by an edge in either direction.
  std::span<const NodeId> neighbors(NodeId u) const {
    check_node(u);
    return nbrs_[u];
  }

  std::span<const NodeId> out_neighbors(NodeId u) const {
    check_node(u);
    return directed_ ? std::span<const NodeId>(out_nbrs_[u]) : std::span<const NodeId>(nbrs_[u]);
  }

  std::span<const NodeId> in_neighbors(NodeId u) const {
    check_node(u);
    return directed_ ? std::span<const NodeId>(in_nbrs_[u]) : std::span<const NodeId>(nbrs_[u]);
  }

  std::size_t degree(NodeId u) const { return neighbors(u).size(); }
  std::size_t out_degree(NodeId u) const { return out_neighbors(u).size(); }
  std::size_t in_degree(NodeId u) const { return in_neighbors(u).size(); }

  std::size_t node_multiplicity(NodeId u) const { return labels(u).size(); }

  /// Labels on u -> v, sorted. Empty when the pair is not adjacent.
  std::span<const Arc> arcs_between(NodeId u, NodeId v) const {
    check_node(u);
    check_node(v);
    return arcs_to(out_[u], v);
  }

  std::size_t edge_multiplicity(NodeId u, NodeId v) const { return arcs_between(u, v).size(); }

  bool has_edge(NodeId u, NodeId v, LabelId l) const {
    check_node(u);
    check_node(v);
    return std::binary_search(out_[u].begin(), out_[u].end(), Arc{v, l});
  }

  /// True when u -> v carries every label in `wanted` (sorted). Unchecked:
  /// u and v must exist.
  bool has_edge_labels(NodeId u, NodeId v, std::span<const LabelId> wanted) const {
    if (wanted.empty()) return true;
    auto arcs = arcs_to(out_[u], v);
    if (arcs.size() < wanted.size()) return false;
    std::size_t i = 0;
    for (const Arc& a : arcs) {
      if (a.label == wanted[i]) {
        if (++i == wanted.size()) return true;
      } else if (a.label > wanted[i]) {
        return false;
      }
    }
    return false;
  }

  LabelDictionary& node_dict() { return node_dict_; }
  const LabelDictionary& node_dict() const { return node_dict_; }
  LabelDictionary& edge_dict() { return edge_dict_; }
  const LabelDictionary& edge_dict() const { return edge_dict_; }

  /// All (u, v, l) triples. Undirected edges appear once with u <= v.
  std::vector<std::tuple<NodeId, NodeId, LabelId>> edges() const {
    std::vector<std::tuple<NodeId, NodeId, LabelId>> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < node_count(); ++u) {
      for (const Arc& a : out_[u]) {
        if (!directed_ && a.node < u) continue;
        out.emplace_back(u, a.node, a.label);
      }
    }
    return out;
  }

 private:
  static std::span<const Arc> arcs_to(const std::vector<Arc>& list, NodeId v) {
    auto lo = std::lower_bound(list.begin(), list.end(), Arc{v, 0});
    auto hi = lo;
    while (hi != list.end() && hi->node == v) ++hi;
    return {lo, hi};
  }

  template <typename T>
  static bool insert_sorted(std::vector<T>& v, const T& x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it != v.end() && *it == x) return false;
    v.insert(it, x);
    return true;
  }

  void check_node(NodeId u) const {
    if (u >= node_labels_.size()) throw GraphError("unknown node id " + std::to_string(u));
  }

  void check_mutable() const {
    if (frozen_) throw GraphError("graph is frozen");
  }

  bool directed_;
  bool frozen_ = false;
  std::size_t edge_count_ = 0;
  std::vector<LabelSet> node_labels_;
  std::vector<std::vector<Arc>> out_;
  std::vector<std::vector<Arc>> in_;
  std::vector<std::vector<NodeId>> nbrs_;
  std::vector<std::vector<NodeId>> out_nbrs_;
  std::vector<std::vector<NodeId>> in_nbrs_;
  LabelDictionary node_dict_;
  LabelDictionary edge_dict_;
};

/// Rebuilds `g` with its labels interned into the given dictionaries.
/// Used to put a query into the target's label space before matching.
inline LabeledMultigraph relabel_into(const LabeledMultigraph& g, const LabelDictionary& node_dict,
                                      const LabelDictionary& edge_dict) {
  LabeledMultigraph out(g.directed() ? Directedness::kDirected : Directedness::kUndirected);
  out.node_dict() = node_dict;
  out.edge_dict() = edge_dict;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    LabelSet ids;
    for (LabelId l : g.labels(u)) ids.push_back(out.node_dict().intern(g.node_dict().name(l)));
    out.add_node(ids);
  }
  for (auto [u, v, l] : g.edges()) out.add_edge(u, v, out.edge_dict().intern(g.edge_dict().name(l)));
  if (g.frozen()) out.freeze();
  return out;
}

/// Equality of structure by label *names*, independent of interning order.
inline bool structurally_equal(const LabeledMultigraph& a, const LabeledMultigraph& b) {
  if (a.directed() != b.directed() || a.node_count() != b.node_count() || a.edge_count() != b.edge_count())
    return false;
  auto names = [](const LabelDictionary& d, std::span<const LabelId> ids) {
    std::vector<std::string> out;
    for (LabelId l : ids) out.push_back(d.name(l));
    std::sort(out.begin(), out.end());
    return out;
  };
  for (NodeId u = 0; u < a.node_count(); ++u) {
    if (names(a.node_dict(), a.labels(u)) != names(b.node_dict(), b.labels(u))) return false;
  }
  auto edge_names = [](const LabeledMultigraph& g) {
    std::vector<std::tuple<NodeId, NodeId, std::string>> out;
    for (auto [u, v, l] : g.edges()) out.emplace_back(u, v, g.edge_dict().name(l));
    std::sort(out.begin(), out.end());
    return out;
  };
  return edge_names(a) == edge_names(b);
}

}  // namespace smm
