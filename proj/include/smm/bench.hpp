#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "smm/engine.hpp"
#include "smm/symmetry.hpp"
#include "smm/synth.hpp"

namespace smm {

/// One (query, target) pair to run with and without breaking conditions.
struct BenchCase {
  std::string query_name;
  std::string target_name;
  std::string topology;  // "file" for pairs read from disk
  std::shared_ptr<const LabeledMultigraph> query;
  std::shared_ptr<const LabeledMultigraph> target;
};

/// Generated workload: unlabeled preferential-attachment targets crossed
/// with path/star/clique queries.
struct BenchGrid {
  std::size_t nodes = 100;
  std::vector<std::size_t> densities;
  std::vector<std::uint64_t> seeds;
  std::vector<Topology> topologies;
  std::vector<std::size_t> sizes;
};

struct BenchOptions {
  std::size_t repetitions = 1;
  std::size_t threads = 1;
  std::optional<std::chrono::duration<double>> timeout;
  std::optional<std::uint64_t> candidate_cap;
};

struct BenchRow {
  std::string query;
  std::string target;
  std::string topology;
  std::size_t k = 0;
  std::size_t aut_count = 0;
  bool sbc = false;
  std::uint64_t matches = 0;
  std::uint64_t candidate_pairs = 0;
  double elapsed_ms = 0;
  bool completed = false;
};

/// Derived comparison of the two runs of one case.
struct BenchRatio {
  std::size_t case_index = 0;
  std::optional<double> match_ratio;  // only when both runs completed and matched
  double pair_ratio = 0;
  double time_ratio = 0;
  bool both_completed = false;
  bool quotient_ok = true;  // no-SBC matches == SBC matches * aut_count
};

struct BenchResult {
  std::vector<BenchRow> rows;  // two per case: sbc=1 then sbc=0
  std::vector<BenchRatio> ratios;

  std::size_t quotient_violations() const {
    return static_cast<std::size_t>(std::count_if(ratios.begin(), ratios.end(), [](auto& r) { return !r.quotient_ok; }));
  }
  bool any_incomplete() const {
    return std::any_of(rows.begin(), rows.end(), [](auto& r) { return !r.completed; });
  }
};

inline std::string grid_target_name(std::size_t n, std::size_t d, std::uint64_t seed) {
  return "ba_n" + std::to_string(n) + "_d" + std::to_string(d) + "_s" + std::to_string(seed);
}

inline std::vector<BenchCase> materialize_grid(const BenchGrid& grid) {
  std::vector<BenchCase> out;
  std::vector<std::pair<std::string, std::shared_ptr<const LabeledMultigraph>>> queries;
  for (Topology t : grid.topologies)
    for (std::size_t k : grid.sizes)
      queries.emplace_back(std::string(to_string(t)) + "_k" + std::to_string(k),
                           std::make_shared<const LabeledMultigraph>(make_topology_query(t, k, "1", "1")));
  for (std::size_t d : grid.densities) {
    for (std::uint64_t seed : grid.seeds) {
      SynthConfig cfg;
      cfg.nodes = grid.nodes;
      cfg.density = d;
      cfg.seed = seed;
      auto target = std::make_shared<const LabeledMultigraph>(generate_ba_multigraph(cfg));
      std::size_t qi = 0;
      for (Topology t : grid.topologies) {
        for (std::size_t k : grid.sizes) {
          (void)k;
          out.push_back({queries[qi].first, grid_target_name(grid.nodes, d, seed), to_string(t), queries[qi].second,
                         target});
          ++qi;
        }
      }
    }
  }
  return out;
}

namespace detail {

inline std::pair<BenchRow, BenchRow> run_case(const BenchCase& c, const BenchOptions& opt) {
  std::pair<BenchRow, BenchRow> rows;
  const MatchPlan plan = prepare_match(*c.query, *c.target, true);
  for (int pass = 0; pass < 2; ++pass) {
    BenchRow& row = pass == 0 ? rows.first : rows.second;
    row.query = c.query_name;
    row.target = c.target_name;
    row.topology = c.topology;
    row.k = c.query->node_count();
    row.aut_count = plan.automorphisms;
    row.sbc = pass == 0;
    SearchConfig cfg;
    cfg.sbc_enabled = row.sbc;
    cfg.timeout = opt.timeout;
    cfg.candidate_cap = opt.candidate_cap;
    double best = -1;
    for (std::size_t rep = 0; rep < std::max<std::size_t>(1, opt.repetitions); ++rep) {
      auto r = subgraph_matching(plan.query, *c.target, plan.domains, plan.order, plan.conditions, cfg);
      row.matches = r.matches;
      row.candidate_pairs = r.candidate_pairs;
      row.completed = r.completed();
      if (best < 0 || r.elapsed_ms < best) best = r.elapsed_ms;
    }
    row.elapsed_ms = best;
  }
  return rows;
}

}  // namespace detail

/// Runs every case with and without breaking conditions. Cases are spread
/// over `threads` workers; each search stays on one thread and results keep
/// input order.
inline BenchResult run_bench(const std::vector<BenchCase>& cases, const BenchOptions& opt) {
  std::vector<std::pair<BenchRow, BenchRow>> slots(cases.size());
  std::vector<std::exception_ptr> errors(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      try {
        slots[i] = detail::run_case(cases[i], opt);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(opt.threads, cases.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  BenchResult res;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const auto& [on, off] = slots[i];
    res.rows.push_back(on);
    res.rows.push_back(off);
    BenchRatio ratio;
    ratio.case_index = i;
    ratio.both_completed = on.completed && off.completed;
    ratio.pair_ratio = on.candidate_pairs ? double(off.candidate_pairs) / double(on.candidate_pairs) : 0.0;
    ratio.time_ratio = on.elapsed_ms > 0 ? off.elapsed_ms / on.elapsed_ms : 0.0;
    if (ratio.both_completed) {
      if (on.matches) ratio.match_ratio = double(off.matches) / double(on.matches);
      ratio.quotient_ok = off.matches == on.matches * on.aut_count;
    }
    res.ratios.push_back(ratio);
  }
  return res;
}

inline constexpr const char* kBenchCsvHeader = "query,target,topology,k,aut_count,sbc,matches,candidate_pairs,elapsed_ms,completed";

inline std::string format_ms(double ms, bool mask) {
  if (mask) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

inline std::string bench_csv(const BenchResult& res, bool mask_timing = false) {
  std::ostringstream out;
  out << kBenchCsvHeader << '\n';
  for (const auto& r : res.rows) {
    out << r.query << ',' << r.target << ',' << r.topology << ',' << r.k << ',' << r.aut_count << ',' << (r.sbc ? 1 : 0)
        << ',' << r.matches << ',' << r.candidate_pairs << ',' << format_ms(r.elapsed_ms, mask_timing) << ','
        << (r.completed ? 1 : 0) << '\n';
  }
  return out.str();
}

inline std::string bench_ratios_csv(const BenchResult& res, bool mask_timing = false) {
  std::ostringstream out;
  out << "query,target,topology,k,aut_count,match_ratio,pair_ratio,time_ratio,completed\n";
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return std::string(buf);
  };
  for (const auto& r : res.ratios) {
    const auto& on = res.rows[2 * r.case_index];
    out << on.query << ',' << on.target << ',' << on.topology << ',' << on.k << ',' << on.aut_count << ','
        << (r.match_ratio ? num(*r.match_ratio) : std::string()) << ',' << num(r.pair_ratio) << ','
        << (mask_timing ? std::string("0") : num(r.time_ratio)) << ',' << (r.both_completed ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace smm
