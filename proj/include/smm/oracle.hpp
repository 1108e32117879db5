#pragma once

// Brute-force reference for tests: every injective assignment is enumerated
// and checked against the matching definition at the leaves only. Shares no
// code with the search engine beyond the graph type.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "smm/engine.hpp"
#include "smm/graph.hpp"
#include "smm/symmetry.hpp"

namespace smm {

inline constexpr std::size_t kOracleMaxQueryNodes = 6;
inline constexpr std::size_t kOracleMaxTargetNodes = 30;

class OracleError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// All matches of `query` in `target`, sorted lexicographically. Labels are
/// matched by name.
inline std::vector<Match> brute_force_matches(const LabeledMultigraph& query_in, const LabeledMultigraph& target) {
  if (query_in.node_count() > kOracleMaxQueryNodes || target.node_count() > kOracleMaxTargetNodes)
    throw OracleError("instance exceeds oracle size limits");
  if (query_in.directed() != target.directed()) throw std::invalid_argument("directedness mismatch");
  const LabeledMultigraph query = relabel_into(query_in, target.node_dict(), target.edge_dict());
  const std::size_t nq = query.node_count();
  const std::size_t nt = target.node_count();
  const auto edges = query.edges();

  std::vector<Match> out;
  std::vector<NodeId> image(nq, 0);
  std::vector<char> used(nt, 0);

  auto satisfies = [&]() {
    for (NodeId q = 0; q < nq; ++q) {
      const auto& need = query.labels(q);
      const auto& have = target.labels(image[q]);
      for (LabelId l : need)
        if (std::find(have.begin(), have.end(), l) == have.end()) return false;
    }
    for (auto [u, v, l] : edges) {
      bool found = false;
      for (const Arc& a : target.out_arcs(image[u]))
        if (a.node == image[v] && a.label == l) found = true;
      if (!found) return false;
    }
    return true;
  };

  auto rec = [&](auto&& self, std::size_t q) -> void {
    if (q == nq) {
      if (satisfies()) out.push_back(Match{image});
      return;
    }
    for (NodeId t = 0; t < nt; ++t) {
      if (used[t]) continue;
      used[t] = 1;
      image[q] = t;
      self(self, q + 1);
      used[t] = 0;
    }
  };
  if (nq > 0) rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

struct OracleResult {
  std::vector<Match> matches;
  std::vector<std::vector<std::size_t>> classes;  // indices into matches
};

/// Partitions matches into classes {m o rho : rho in A}. Every class must
/// have exactly |A| members; otherwise either the match list or the matrix
/// is wrong and OracleError is thrown.
inline OracleResult group_by_automorphism(std::vector<Match> matches, const AutomorphismMatrix& a) {
  OracleResult r;
  std::map<std::vector<NodeId>, std::size_t> class_of_key;
  for (std::size_t i = 0; i < matches.size(); ++i) {
    const auto& m = matches[i].target;
    std::vector<NodeId> key = m;
    std::vector<NodeId> composed(m.size());
    for (const auto& row : a.rows) {
      if (row.size() != m.size()) throw OracleError("automorphism matrix does not fit the matches");
      for (std::size_t j = 0; j < m.size(); ++j) composed[j] = m[row[j]];
      key = std::min(key, composed);
    }
    auto [it, inserted] = class_of_key.emplace(std::move(key), r.classes.size());
    if (inserted) r.classes.emplace_back();
    r.classes[it->second].push_back(i);
  }
  for (const auto& c : r.classes)
    if (c.size() != a.size())
      throw OracleError("automorphism class of size " + std::to_string(c.size()) + ", expected " +
                        std::to_string(a.size()));
  r.matches = std::move(matches);
  return r;
}

}  // namespace smm
