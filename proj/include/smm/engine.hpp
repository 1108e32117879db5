#pragma once

#include <algorithm>
#include <bit>
#include <limits>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "smm/domains.hpp"
#include "smm/graph.hpp"
#include "smm/ordering.hpp"
#include "smm/symmetry.hpp"

namespace smm {

/// A complete mapping: target[q] is the image of query node q.
struct Match {
  std::vector<NodeId> target;

  friend bool operator==(const Match&, const Match&) = default;
  friend auto operator<=>(const Match&, const Match&) = default;
};

/// "q0->t4 q1->t2 ..." in query id order.
inline std::string format_match(std::span<const NodeId> image) {
  std::string out;
  for (std::size_t q = 0; q < image.size(); ++q) {
    if (q) out += ' ';
    out += 'q' + std::to_string(q) + "->t" + std::to_string(image[q]);
  }
  return out;
}

/// Injectivity plus both matching conditions: label containment on nodes
/// and every query edge present with the same label between the images.
inline bool is_valid_match(const LabeledMultigraph& query, const LabeledMultigraph& target,
                           std::span<const NodeId> image) {
  if (image.size() != query.node_count()) return false;
  std::vector<char> seen(target.node_count(), 0);
  for (NodeId q = 0; q < query.node_count(); ++q) {
    const NodeId t = image[q];
    if (t >= target.node_count() || seen[t]) return false;
    seen[t] = 1;
    if (!labels_subset(query.labels(q), target.labels(t))) return false;
  }
  for (auto [u, v, l] : query.edges()) {
    if (!target.has_edge(image[u], image[v], l)) return false;
  }
  return true;
}

enum class EmitMode { kCount, kCollect, kCallback };

/// Search kernel. kAuto takes the bitset kernel when its target index fits
/// in a fixed memory budget; both produce identical reports apart from timing.
enum class Kernel { kAuto, kScalar, kBitset };

enum class StopReason { kCompleted, kTimeout, kCandidateCap };

inline const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::kCompleted: return "completed";
    case StopReason::kTimeout: return "timeout";
    case StopReason::kCandidateCap: return "candidate_cap";
  }
  return "?";
}

struct SearchConfig {
  bool sbc_enabled = true;
  EmitMode emit = EmitMode::kCount;
  std::optional<std::chrono::duration<double>> timeout;
  std::optional<std::uint64_t> candidate_cap;
  std::function<void(std::span<const NodeId>)> on_match;  // kCallback only
  bool verify_matches = false;  // re-check every emitted match; throws on violation
  Kernel kernel = Kernel::kAuto;
};

struct SearchReport {
  std::uint64_t matches = 0;
  std::uint64_t candidate_pairs = 0;
  double elapsed_ms = 0;
  double preprocessing_ms = 0;
  StopReason stop = StopReason::kCompleted;
  std::vector<Match> collected;

  bool completed() const { return stop == StopReason::kCompleted; }
};

/// Partial mapping plus the stack of (query, target) pairs in search order.
class SearchState {
 public:
  SearchState(std::size_t query_nodes, std::size_t target_nodes)
      : image_(query_nodes, kNoNode), used_(target_nodes, 0) {
    stack_.reserve(query_nodes);
  }

  void assign(NodeId q, NodeId t) {
    image_[q] = t;
    used_[t] = 1;
    stack_.emplace_back(q, t);
  }

  /// Undoes the most recent assignment.
  void pop() {
    auto [q, t] = stack_.back();
    stack_.pop_back();
    image_[q] = kNoNode;
    used_[t] = 0;
  }

  NodeId image(NodeId q) const { return image_[q]; }
  bool is_used(NodeId t) const { return used_[t] != 0; }
  std::size_t depth() const { return stack_.size(); }
  std::span<const NodeId> mapping() const { return image_; }
  std::span<const std::pair<NodeId, NodeId>> partial_match() const { return stack_; }

 private:
  std::vector<NodeId> image_;
  std::vector<char> used_;
  std::vector<std::pair<NodeId, NodeId>> stack_;
};

namespace detail {

// Edge-label lookup for the target. Small targets get a dense pair table
// pointing into one flat label array; larger ones use the per-node sorted
// arc lists.
class TargetPairIndex {
 public:
  static constexpr std::size_t kDenseLimit = 1024;

  TargetPairIndex(const LabeledMultigraph& g, bool want_dense) : g_(&g) {
    const std::size_t n = g.node_count();
    if (!want_dense || n > kDenseLimit) return;
    runs_.assign(n * n, Run{0, 0});
    for (NodeId u = 0; u < n; ++u) {
      auto arcs = g.out_arcs(u);
      std::size_t i = 0;
      while (i < arcs.size()) {
        std::size_t j = i;
        const auto start = static_cast<std::uint32_t>(flat_.size());
        while (j < arcs.size() && arcs[j].node == arcs[i].node) flat_.push_back(arcs[j++].label);
        runs_[std::size_t{u} * n + arcs[i].node] = Run{start, static_cast<std::uint32_t>(j - i)};
        i = j;
      }
    }
    dense_ = true;
  }

  bool has_labels(NodeId u, NodeId v, std::span<const LabelId> wanted) const {
    if (!dense_) return g_->has_edge_labels(u, v, wanted);
    const Run r = runs_[std::size_t{u} * g_->node_count() + v];
    if (r.count < wanted.size()) return false;
    if (wanted.size() == 1) {
      const LabelId* p = flat_.data() + r.start;
      for (std::uint32_t i = 0; i < r.count; ++i)
        if (p[i] == wanted[0]) return true;
      return false;
    }
    auto have = std::span<const LabelId>(flat_.data() + r.start, r.count);
    return std::includes(have.begin(), have.end(), wanted.begin(), wanted.end());
  }

 private:
  struct Run {
    std::uint32_t start;
    std::uint32_t count;
  };
  const LabeledMultigraph* g_;
  bool dense_ = false;
  std::vector<Run> runs_;
  std::vector<LabelId> flat_;
};

}  // namespace detail

/// Decides whether target t may extend the current partial match at query
/// node q: t unused, every breaking condition against an already matched
/// node respected in both directions, and every query edge between q and a
/// matched node (either orientation, every label) present in the target.
/// Given a search order, constraints toward later nodes are dropped since
/// those nodes are never matched yet when q is reached.
class FeasibilityChecker {
 public:
  FeasibilityChecker(const LabeledMultigraph& query, const LabeledMultigraph& target,
                     const BreakingConditionSet& conditions, const NodeOrdering* order = nullptr)
      : index_(target, order != nullptr), cons_(detail::collect_constraints(query)) {
    const std::size_t n = query.node_count();
    below_.resize(n);
    above_.resize(n);
    if (!conditions.empty()) {
      if (conditions.must_be_below.size() != n) throw std::invalid_argument("conditions do not match query size");
      below_ = conditions.must_be_below;
      above_ = conditions.must_be_above;
    }
    if (order) {
      std::vector<std::size_t> pos(n);
      for (std::size_t i = 0; i < order->order.size(); ++i) pos[order->order[i]] = i;
      for (NodeId q = 0; q < n; ++q) {
        auto later = [&](NodeId x) { return pos[x] > pos[q]; };
        std::erase_if(cons_.pairs[q], [&](const auto& pc) { return later(pc.other); });
        std::erase_if(below_[q], later);
        std::erase_if(above_[q], later);
      }
    }
  }

  bool operator()(NodeId q, NodeId t, const SearchState& s) const {
    if (s.is_used(t)) return false;
    for (NodeId a : below_[q]) {
      const NodeId ta = s.image(a);
      if (ta != kNoNode && ta >= t) return false;
    }
    for (NodeId b : above_[q]) {
      const NodeId tb = s.image(b);
      if (tb != kNoNode && t >= tb) return false;
    }
    if (!cons_.self_loop[q].empty() && !index_.has_labels(t, t, cons_.self_loop[q])) return false;
    for (const auto& pc : cons_.pairs[q]) {
      const NodeId t2 = s.image(pc.other);
      if (t2 == kNoNode) continue;
      if (!index_.has_labels(t, t2, pc.out)) return false;
      if (!pc.in.empty() && !index_.has_labels(t2, t, pc.in)) return false;
    }
    return true;
  }

 private:
  detail::TargetPairIndex index_;
  detail::QueryConstraints cons_;
  std::vector<std::vector<NodeId>> below_;
  std::vector<std::vector<NodeId>> above_;
};

inline bool check_feasibility(NodeId q, NodeId t, const SearchState& state, const BreakingConditionSet& conditions,
                              const LabeledMultigraph& query, const LabeledMultigraph& target) {
  return FeasibilityChecker(query, target, conditions)(q, t, state);
}

namespace detail {

inline constexpr std::size_t kBitsetMaxBytes = std::size_t{64} << 20;

// Target adjacency as rows of bits, one row per (node, query edge label,
// direction) plus an any-label neighbor row per node and a self-loop row per
// label. Only labels the query uses are indexed.
class TargetBitIndex {
 public:
  static std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

  static std::size_t bytes_needed(const LabeledMultigraph& target, std::size_t labels) {
    const std::size_t n = target.node_count();
    const std::size_t per_node = 1 + labels * (target.directed() ? 2 : 1);
    return (n * per_node + labels) * words_for(n) * sizeof(std::uint64_t);
  }

  TargetBitIndex(const LabeledMultigraph& target, LabelSet labels)
      : n_(target.node_count()),
        w_(words_for(n_)),
        directed_(target.directed()),
        labels_(std::move(labels)),
        per_node_(1 + labels_.size() * (directed_ ? 2 : 1)),
        bits_((n_ * per_node_ + labels_.size()) * w_, 0) {
    for (NodeId u = 0; u < n_; ++u) {
      for (const Arc& a : target.out_arcs(u)) {
        set(row(a.node, 0), u);
        set(row(u, 0), a.node);
        const std::size_t li = label_index(a.label);
        if (li == kNone) continue;
        set(to_row(a.node, li), u);
        if (directed_) set(from_row(u, li), a.node);
        if (a.node == u) set(loop_row(li), u);
      }
    }
  }

  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::size_t words() const { return w_; }
  std::size_t label_index(LabelId l) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
    return it != labels_.end() && *it == l ? static_cast<std::size_t>(it - labels_.begin()) : kNone;
  }
  const std::uint64_t* any(NodeId u) const { return bits_.data() + row(u, 0); }
  // Nodes t with an edge t -> u labeled labels_[li].
  const std::uint64_t* to(NodeId u, std::size_t li) const { return bits_.data() + to_row(u, li); }
  // Nodes t with an edge u -> t labeled labels_[li].
  const std::uint64_t* from(NodeId u, std::size_t li) const {
    return bits_.data() + (directed_ ? from_row(u, li) : to_row(u, li));
  }
  const std::uint64_t* loop(std::size_t li) const { return bits_.data() + loop_row(li); }

 private:
  std::size_t row(NodeId u, std::size_t slot) const { return (std::size_t{u} * per_node_ + slot) * w_; }
  std::size_t to_row(NodeId u, std::size_t li) const { return row(u, 1 + li); }
  std::size_t from_row(NodeId u, std::size_t li) const { return row(u, 1 + labels_.size() + li); }
  std::size_t loop_row(std::size_t li) const { return (n_ * per_node_ + li) * w_; }
  void set(std::size_t offset, NodeId bit) { bits_[offset + bit / 64] |= std::uint64_t{1} << (bit % 64); }

  std::size_t n_, w_;
  bool directed_;
  LabelSet labels_;
  std::size_t per_node_;
  std::vector<std::uint64_t> bits_;
};

inline LabelSet query_edge_labels(const QueryConstraints& cons) {
  LabelSet out;
  for (const auto& list : cons.pairs)
    for (const auto& pc : list) {
      out.insert(out.end(), pc.out.begin(), pc.out.end());
      out.insert(out.end(), pc.in.begin(), pc.in.end());
    }
  for (const auto& loop : cons.self_loop) out.insert(out.end(), loop.begin(), loop.end());
  return make_label_set(out);
}

// Same search as the scalar kernel, in the same candidate order, with the
// same counters: candidates are the set bits of
//   Dom(q) & ~used & N(f(parent)),
// and the feasible ones additionally pass the edge rows of every earlier
// neighbor and the id window set by the breaking conditions. At the last
// depth in count mode whole words are counted at once.
struct BitsetSearch {
  struct Mask {
    NodeId other;
    std::size_t label;
    bool from;  // row of nodes reached from f(other), else reaching it
  };

  const LabeledMultigraph& query;
  const LabeledMultigraph& target;
  const DomainMap& dom;
  const NodeOrdering& order;
  const SearchConfig& cfg;
  const TargetBitIndex index;
  std::vector<std::vector<Mask>> masks;          // per depth
  std::vector<std::vector<std::size_t>> loops;   // per depth
  std::vector<std::vector<NodeId>> below, above; // per depth, earlier nodes only

  BitsetSearch(const LabeledMultigraph& q, const LabeledMultigraph& t, const DomainMap& d, const NodeOrdering& o,
               const BreakingConditionSet& conditions, const SearchConfig& c, const QueryConstraints& cons,
               LabelSet labels)
      : query(q), target(t), dom(d), order(o), cfg(c), index(t, std::move(labels)) {
    const std::size_t nq = q.node_count();
    std::vector<std::size_t> pos(nq);
    for (std::size_t i = 0; i < nq; ++i) pos[o.order[i]] = i;
    masks.resize(nq);
    loops.resize(nq);
    below.resize(nq);
    above.resize(nq);
    for (std::size_t depth = 0; depth < nq; ++depth) {
      const NodeId v = o.order[depth];
      for (const auto& pc : cons.pairs[v]) {
        if (pos[pc.other] > depth) continue;
        for (LabelId l : pc.out) masks[depth].push_back({pc.other, index.label_index(l), false});
        for (LabelId l : pc.in) masks[depth].push_back({pc.other, index.label_index(l), true});
      }
      for (LabelId l : cons.self_loop[v]) loops[depth].push_back(index.label_index(l));
      if (!conditions.empty()) {
        for (NodeId x : conditions.must_be_below[v])
          if (pos[x] < depth) below[depth].push_back(x);
        for (NodeId x : conditions.must_be_above[v])
          if (pos[x] < depth) above[depth].push_back(x);
      }
    }
  }

  SearchReport run(std::chrono::steady_clock::time_point start) const {
    using Clock = std::chrono::steady_clock;
    const std::size_t nq = query.node_count();
    const std::size_t nt = target.node_count();
    const std::size_t w = index.words();
    SearchReport report;

    std::vector<std::uint64_t> dom_bits(nq * w, 0);
    for (NodeId v = 0; v < nq; ++v)
      for (NodeId t : dom[v]) dom_bits[v * w + t / 64] |= std::uint64_t{1} << (t % 64);
    std::vector<std::uint64_t> used(w, 0), base(nq * w, 0), feas(nq * w, 0);
    std::vector<std::size_t> cursor(nq, 0);
    SearchState state(nq, nt);
    std::vector<const std::uint64_t*> rows;

    std::optional<Clock::time_point> deadline;
    if (cfg.timeout) deadline = start + std::chrono::duration_cast<Clock::duration>(*cfg.timeout);
    const bool bulk_last = cfg.emit == EmitMode::kCount && !cfg.verify_matches;

    auto load = [&](std::size_t depth) {
      const NodeId v = order.order[depth];
      const NodeId p = order.parent[v];
      const std::uint64_t* par = p == kNoNode ? nullptr : index.any(state.image(p));
      std::size_t lo = 0, hi = nt;
      for (NodeId a : below[depth]) lo = std::max<std::size_t>(lo, state.image(a) + 1);
      for (NodeId b : above[depth]) hi = std::min<std::size_t>(hi, state.image(b));
      rows.clear();
      bool impossible = false;
      for (const auto& m : masks[depth]) {
        if (m.label == TargetBitIndex::kNone) impossible = true;
        if (impossible) break;
        rows.push_back(m.from ? index.from(state.image(m.other), m.label) : index.to(state.image(m.other), m.label));
      }
      for (std::size_t li : loops[depth]) {
        if (li == TargetBitIndex::kNone) impossible = true;
        if (impossible) break;
        rows.push_back(index.loop(li));
      }
      std::uint64_t* b = base.data() + depth * w;
      std::uint64_t* f = feas.data() + depth * w;
      const std::uint64_t* d = dom_bits.data() + std::size_t{v} * w;
      for (std::size_t i = 0; i < w; ++i) {
        std::uint64_t x = d[i] & ~used[i];
        if (par) x &= par[i];
        b[i] = x;
        std::uint64_t window = ~std::uint64_t{0};
        const std::size_t first = i * 64;
        if (lo > first) window = lo >= first + 64 ? 0 : window << (lo - first);
        if (hi < first + 64) window &= hi <= first ? 0 : (~std::uint64_t{0} >> (first + 64 - hi));
        x &= window;
        for (const std::uint64_t* r : rows) x &= r[i];
        f[i] = impossible ? 0 : x;
      }
      cursor[depth] = 0;
    };
    auto emit = [&]() {
      ++report.matches;
      if (cfg.verify_matches && !is_valid_match(query, target, state.mapping()))
        throw std::logic_error("search emitted an invalid match: " + format_match(state.mapping()));
      if (cfg.emit == EmitMode::kCollect) {
        auto m = state.mapping();
        report.collected.push_back(Match{{m.begin(), m.end()}});
      } else if (cfg.emit == EmitMode::kCallback && cfg.on_match) {
        cfg.on_match(state.mapping());
      }
    };
    auto assign = [&](NodeId v, NodeId t) {
      state.assign(v, t);
      used[t / 64] |= std::uint64_t{1} << (t % 64);
    };
    auto unassign = [&]() {
      const NodeId t = state.partial_match().back().second;
      used[t / 64] &= ~(std::uint64_t{1} << (t % 64));
      state.pop();
    };

    std::size_t depth = 0;
    load(0);
    while (true) {
      const NodeId v = order.order[depth];
      std::uint64_t* b = base.data() + depth * w;
      const std::uint64_t* f = feas.data() + depth * w;
      if (bulk_last && depth + 1 == nq) {
        std::uint64_t count = 0;
        for (std::size_t i = 0; i < w; ++i) count += std::popcount(b[i]);
        const std::uint64_t before = report.candidate_pairs;
        if (cfg.candidate_cap && before + count > *cfg.candidate_cap) {
          // Only the first `allowed` candidates are examined.
          std::uint64_t allowed = *cfg.candidate_cap - before;
          for (std::size_t i = 0; i < w && allowed; ++i) {
            std::uint64_t word = b[i];
            const auto pc = static_cast<std::uint64_t>(std::popcount(word));
            if (pc > allowed) {
              std::uint64_t keep = 0;
              for (std::uint64_t k = 0; k < allowed; ++k) {
                const std::uint64_t low = word & (~word + 1);
                keep |= low;
                word ^= low;
              }
              word = keep;
            }
            report.matches += std::popcount(word & f[i]);
            allowed -= std::min<std::uint64_t>(pc, allowed);
          }
          report.candidate_pairs = *cfg.candidate_cap;
          report.stop = StopReason::kCandidateCap;
          break;
        }
        for (std::size_t i = 0; i < w; ++i) report.matches += std::popcount(f[i]);
        report.candidate_pairs += count;
        if (deadline && (before >> 10) != (report.candidate_pairs >> 10) && Clock::now() >= *deadline) {
          report.stop = StopReason::kTimeout;
          break;
        }
      } else {
        bool descended = false;
        bool stopped = false;
        for (std::size_t& i = cursor[depth]; i < w; ++i) {
          while (b[i]) {
            const int bit = std::countr_zero(b[i]);
            b[i] &= b[i] - 1;
            const NodeId t = static_cast<NodeId>(i * 64 + bit);
            if (cfg.candidate_cap && report.candidate_pairs >= *cfg.candidate_cap) {
              report.stop = StopReason::kCandidateCap;
              stopped = true;
              break;
            }
            if ((++report.candidate_pairs & 1023) == 0 && deadline && Clock::now() >= *deadline) {
              report.stop = StopReason::kTimeout;
              stopped = true;
              break;
            }
            if (!((f[i] >> bit) & 1)) continue;
            assign(v, t);
            if (depth + 1 == nq) {
              emit();
              unassign();
              continue;
            }
            descended = true;
            break;
          }
          if (stopped || descended) break;
        }
        if (stopped) break;
        if (descended) {
          load(++depth);
          continue;
        }
      }
      if (depth == 0) break;
      --depth;
      unassign();
    }
    report.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return report;
  }
};

}  // namespace detail

/// Backtracking search over `order`. The first node draws candidates from
/// its domain; every other node from the neighbors of its parent's image
/// intersected with its domain (domain only, when it has no parent).
/// Candidates are tried in ascending target id. Query and target must share
/// label ids.
inline SearchReport subgraph_matching(const LabeledMultigraph& query, const LabeledMultigraph& target,
                                      const DomainMap& dom, const NodeOrdering& order,
                                      const BreakingConditionSet& conditions, const SearchConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  require_same_directedness(query, target);
  const std::size_t nq = query.node_count();
  const std::size_t nt = target.node_count();
  if (nq == 0) throw std::invalid_argument("query has no nodes");
  if (dom.size() != nq || order.size() != nq || order.parent.size() != nq)
    throw std::invalid_argument("domains or ordering do not match the query");

  static const BreakingConditionSet kNone;
  const BreakingConditionSet& active = cfg.sbc_enabled ? conditions : kNone;
  if (cfg.kernel != Kernel::kScalar) {
    const auto cons = detail::collect_constraints(query);
    auto labels = detail::query_edge_labels(cons);
    const bool fits = detail::TargetBitIndex::bytes_needed(target, labels.size()) <= detail::kBitsetMaxBytes;
    if (cfg.kernel == Kernel::kBitset && !fits) throw std::invalid_argument("target too large for the bitset kernel");
    if (fits) return detail::BitsetSearch(query, target, dom, order, active, cfg, cons, std::move(labels)).run(start);
  }

  SearchReport report;
  const FeasibilityChecker feasible(query, target, active, &order);

  std::vector<char> member(nq * nt, 0);
  for (NodeId q = 0; q < nq; ++q)
    for (NodeId t : dom[q]) member[std::size_t{q} * nt + t] = 1;

  SearchState state(nq, nt);
  std::vector<std::span<const NodeId>> cands(nq);
  std::vector<std::size_t> pos(nq, 0);
  auto load = [&](std::size_t depth) {
    const NodeId q = order.order[depth];
    const NodeId p = order.parent[q];
    cands[depth] = p == kNoNode ? std::span<const NodeId>(dom[q]) : target.neighbors(state.image(p));
    pos[depth] = 0;
  };
  auto emit = [&]() {
    ++report.matches;
    if (cfg.verify_matches && !is_valid_match(query, target, state.mapping()))
      throw std::logic_error("search emitted an invalid match: " + format_match(state.mapping()));
    if (cfg.emit == EmitMode::kCollect) {
      auto m = state.mapping();
      report.collected.push_back(Match{{m.begin(), m.end()}});
    } else if (cfg.emit == EmitMode::kCallback && cfg.on_match) {
      cfg.on_match(state.mapping());
    }
  };

  std::optional<Clock::time_point> deadline;
  if (cfg.timeout) deadline = start + std::chrono::duration_cast<Clock::duration>(*cfg.timeout);

  std::size_t depth = 0;
  load(0);
  while (true) {
    const NodeId q = order.order[depth];
    const char* row = member.data() + std::size_t{q} * nt;
    bool descended = false;
    while (pos[depth] < cands[depth].size()) {
      const NodeId t = cands[depth][pos[depth]++];
      if (!row[t] || state.is_used(t)) continue;
      if (cfg.candidate_cap && report.candidate_pairs >= *cfg.candidate_cap) {
        report.stop = StopReason::kCandidateCap;
        goto done;
      }
      if ((++report.candidate_pairs & 1023) == 0 && deadline && Clock::now() >= *deadline) {
        report.stop = StopReason::kTimeout;
        goto done;
      }
      if (!feasible(q, t, state)) continue;
      state.assign(q, t);
      if (depth + 1 == nq) {
        emit();
        state.pop();
        continue;
      }
      load(++depth);
      descended = true;
      break;
    }
    if (descended) continue;
    if (depth == 0) break;
    --depth;
    state.pop();
  }
done:
  report.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return report;
}

/// Everything the search needs, computed from (query, target) alone.
struct MatchPlan {
  LabeledMultigraph query;  // relabeled into the target's label ids
  DomainMap initial_domains;
  DomainMap domains;
  NodeOrdering order;
  BreakingConditionSet conditions;
  std::size_t automorphisms = 0;  // 0 when symmetry analysis was skipped
};

inline MatchPlan prepare_match(const LabeledMultigraph& query, const LabeledMultigraph& target, bool with_symmetry,
                               std::optional<std::uint64_t> order_tie_seed = {}) {
  require_same_directedness(query, target);
  if (query.node_count() == 0) throw std::invalid_argument("query has no nodes");
  MatchPlan plan{relabel_into(query, target.node_dict(), target.edge_dict()), {}, {}, {}, {}, 0};
  plan.initial_domains = compute_domains(plan.query, target);
  plan.domains = arc_consistency(plan.query, target, plan.initial_domains);
  plan.order = order_query_nodes(plan.query, order_tie_seed);
  if (with_symmetry) {
    auto aut = compute_automorphism_matrix(plan.query);
    plan.automorphisms = aut.size();
    plan.conditions = compute_symm_break_cond(aut);
  }
  return plan;
}

/// Full pipeline: domains, arc consistency, ordering, breaking conditions
/// (when enabled), then search.
inline SearchReport count_matches(const LabeledMultigraph& query, const LabeledMultigraph& target,
                                  const SearchConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const MatchPlan plan = prepare_match(query, target, cfg.sbc_enabled);
  const double prep = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  SearchReport r = subgraph_matching(plan.query, target, plan.domains, plan.order, plan.conditions, cfg);
  r.preprocessing_ms = prep;
  return r;
}

}  // namespace smm
