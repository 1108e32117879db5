// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "smm/smm.hpp"
#include "support/instances.hpp"

using namespace smm;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail.clear();
    if (!pass) detail += "; ";
    pass = false;
    detail += why;
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

using Images = std::vector<std::vector<NodeId>>;

Images collect(const LabeledMultigraph& q, const LabeledMultigraph& t, bool sbc) {
  SearchConfig cfg;
  cfg.sbc_enabled = sbc;
  cfg.emit = EmitMode::kCollect;
  Images out;
  for (auto& m : count_matches(q, t, cfg).collected) out.push_back(m.target);
  std::sort(out.begin(), out.end());
  return out;
}

Verdict worked_symmetry() {
  Verdict v;
  const auto q = fixtures::worked_query();
  const auto t0 = Clock::now();
  const auto aut = compute_automorphism_matrix(q);
  const auto orbits = compute_orbits(aut);
  const auto cond = compute_symm_break_cond(aut);
  const double ms = ms_since(t0);
  const std::vector<std::vector<NodeId>> want_orbits{{0}, {1, 2}};
  const std::vector<std::pair<NodeId, NodeId>> want_cond{{1, 2}};
  if (aut.size() != 2) v.fail(fmt("%zu automorphisms, expected 2", aut.size()));
  if (orbits.orbits != want_orbits) v.fail("orbits differ from {q1},{q2,q3}");
  if (cond.pairs != want_cond) v.fail("conditions differ from {q2<q3}");
  if (ms >= 1.0) v.fail(fmt("took %.3f ms", ms));
  if (v.pass) v.detail = fmt("|Aut|=2, orbits {q1},{q2,q3}, C={q2<q3}, %.3f ms", ms);
  return v;
}

Verdict worked_semantics() {
  Verdict v;
  const auto t = fixtures::worked_target();
  const auto q = fixtures::worked_query();
  const auto plan = prepare_match(q, t, true);
  if (plan.initial_domains[0] != std::vector<NodeId>{0, 1, 3}) v.fail("Dom(q1) before arc consistency is not {t1,t2,t4}");
  const auto& after = plan.domains[0];
  if (!std::includes(plan.initial_domains[0].begin(), plan.initial_domains[0].end(), after.begin(), after.end()))
    v.fail("arc consistency grew Dom(q1)");
  const auto off = collect(q, t, false);
  const auto on = collect(q, t, true);
  const Images want_off{{0, 2, 3}, {0, 3, 2}, {1, 0, 2}, {1, 2, 0}};
  Images want_on;
  for (const auto& m : off)
    if (m[1] < m[2]) want_on.push_back(m);
  if (off != want_off) v.fail(fmt("%zu matches without conditions, expected the 4 known ones", off.size()));
  if (on != want_on || on.size() != 2) v.fail(fmt("%zu matches with conditions, expected the 2 with f(q2)<f(q3)", on.size()));
  if (v.pass) v.detail = "Dom(q1)={t1,t2,t4}, 4 matches without conditions, 2 with";
  return v;
}

struct CorpusStats {
  std::size_t instances = 0, directed = 0, with_matches = 0, symmetric = 0, multi_label = 0, multi_edge = 0;
  std::size_t matches = 0;
  std::map<std::string, std::size_t> kinds;
  double ms = 0;
};

bool has_multi_label(const LabeledMultigraph& g) {
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (g.labels(v).size() > 1) return true;
  return false;
}

bool has_multi_edge(const LabeledMultigraph& g) {
  std::set<std::pair<NodeId, NodeId>> seen;
  for (auto [a, b, l] : g.edges()) {
    (void)l;
    if (!seen.emplace(a, b).second) return true;
  }
  return false;
}

// Criteria 3 and 4 share the corpus; both are evaluated in one pass.
std::pair<Verdict, Verdict> corpus_checks(std::size_t n) {
  Verdict eq, quot;
  CorpusStats s;
  std::size_t eq_bad = 0, quot_bad = 0, class_bad = 0;
  const auto t0 = Clock::now();
  for (std::uint64_t seed = 1; seed <= n; ++seed) {
    const auto inst = fixtures::random_instance(seed);
    ++s.instances;
    ++s.kinds[inst.kind];
    s.directed += inst.target.directed();
    s.multi_label += has_multi_label(inst.target);
    s.multi_edge += has_multi_edge(inst.target);

    const auto oracle = brute_force_matches(inst.query, inst.target);
    Images expected;
    for (auto& m : oracle) expected.push_back(m.target);
    const auto off = collect(inst.query, inst.target, false);
    if (off != expected) ++eq_bad;
    s.matches += expected.size();
    s.with_matches += !expected.empty();

    const auto aut = compute_automorphism_matrix(inst.query);
    s.symmetric += aut.size() > 1;
    const auto on = collect(inst.query, inst.target, true);
    if (off.size() != on.size() * aut.size()) ++quot_bad;
    const std::set<std::vector<NodeId>> reps(on.begin(), on.end());
    const auto grouped = group_by_automorphism(oracle, aut);
    std::size_t covered = 0;
    for (const auto& cls : grouped.classes) {
      std::size_t hits = 0;
      for (std::size_t i : cls) hits += reps.count(grouped.matches[i].target);
      if (hits != 1) ++class_bad;
      covered += hits;
    }
    if (covered != reps.size()) ++class_bad;
  }
  s.ms = ms_since(t0);

  std::string kinds;
  for (auto& [k, c] : s.kinds) kinds += fmt(" %s=%zu", k.c_str(), c);
  const std::string stats =
      fmt("%zu instances (%zu directed, %zu multi-label, %zu multi-edge targets,%s), %zu with matches, %zu matches total",
          s.instances, s.directed, s.multi_label, s.multi_edge, kinds.c_str(), s.with_matches, s.matches);
  if (n < 500) eq.fail("corpus smaller than 500");
  if (eq_bad) eq.fail(fmt("%zu instances disagree with the oracle", eq_bad));
  if (s.ms >= 120000) eq.fail(fmt("took %.0f ms", s.ms));
  if (eq.pass) eq.detail = stats + fmt(", %.0f ms", s.ms);
  if (quot_bad) quot.fail(fmt("%zu instances break count(off) = count(on) * |Aut|", quot_bad));
  if (class_bad) quot.fail(fmt("%zu orbit classes not hit exactly once", class_bad));
  if (quot.pass) quot.detail = fmt("%zu instances, %zu with |Aut|>1, every class hit once", s.instances, s.symmetric);
  return {eq, quot};
}

std::size_t expected_aut(Topology t, std::size_t k) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= (t == Topology::kStar ? k - 1 : k); ++i) f *= i;
  return t == Topology::kPath ? 2 : f;
}

// Runs are bounded by candidate-pair caps instead of wall-clock timeouts so
// the outcome does not depend on machine speed. A capped no-condition run
// still gives a lower bound on the pair ratio, since its full count can only
// be larger.
Verdict reduction_factors() {
  Verdict v;
  constexpr std::uint64_t kBaseCap = 2'000'000'000;
  constexpr std::uint64_t kCliqueBoundFactor = 11;
  const std::array<std::size_t, 3> densities{10, 25, 40};
  const std::array<Topology, 3> topologies{Topology::kPath, Topology::kStar, Topology::kClique};
  const std::array<std::size_t, 3> sizes{4, 5, 6};
  const auto t0 = Clock::now();

  std::map<std::pair<Topology, std::size_t>, std::size_t> oracle_aut;
  for (Topology t : topologies)
    for (std::size_t k : sizes) {
      const auto q = make_topology_query(t, k, "1", "1");
      oracle_aut[{t, k}] = fixtures::count_automorphisms_exhaustive(q);
      if (oracle_aut[{t, k}] != expected_aut(t, k))
        v.fail(fmt("%s k=%zu has %zu automorphisms by exhaustive check", to_string(t), k, oracle_aut[{t, k}]));
    }

  std::size_t runs = 0, both_done = 0, bounded = 0, open = 0, ratio_bad = 0, pair_bad = 0;
  std::map<std::size_t, std::vector<double>> clique6;
  std::map<std::size_t, std::size_t> clique6_open;
  for (std::size_t d : densities) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      SynthConfig sc;
      sc.nodes = 100;
      sc.density = d;
      sc.seed = seed;
      const auto target = generate_ba_multigraph(sc);
      for (Topology t : topologies) {
        for (std::size_t k : sizes) {
          const auto q = make_topology_query(t, k, "1", "1");
          const auto plan = prepare_match(q, target, true);
          if (plan.automorphisms != oracle_aut[{t, k}]) {
            v.fail(fmt("%s k=%zu engine |Aut|=%zu", to_string(t), k, plan.automorphisms));
            continue;
          }
          SearchConfig cfg;
          cfg.candidate_cap = kBaseCap;
          const auto on = subgraph_matching(plan.query, target, plan.domains, plan.order, plan.conditions, cfg);
          cfg.sbc_enabled = false;
          const bool clique_k6 = t == Topology::kClique && k == 6;
          if (clique_k6 && on.completed())
            cfg.candidate_cap = std::max(kBaseCap, kCliqueBoundFactor * on.candidate_pairs);
          const auto off = subgraph_matching(plan.query, target, plan.domains, plan.order, plan.conditions, cfg);
          runs += 2;

          std::optional<double> ratio;
          if (on.completed() && off.completed()) {
            ++both_done;
            if (off.matches != on.matches * plan.automorphisms || on.matches == 0) ++ratio_bad;
            ratio = on.candidate_pairs ? double(off.candidate_pairs) / double(on.candidate_pairs) : 1.0;
          } else if (on.completed()) {
            ++bounded;
            ratio = double(off.candidate_pairs) / double(on.candidate_pairs);
          } else {
            ++open;
          }
          if (ratio && *ratio < 1.0) ++pair_bad;
          if (clique_k6) {
            if (ratio)
              clique6[d].push_back(*ratio);
            else
              ++clique6_open[d];
          }
        }
      }
    }
  }
  const double ms = ms_since(t0);

  if (ratio_bad) v.fail(fmt("%zu completed cases with match ratio != |Aut| or no matches", ratio_bad));
  if (pair_bad) v.fail(fmt("%zu cases with pair ratio < 1", pair_bad));
  std::string medians;
  for (std::size_t d : densities) {
    auto& r = clique6[d];
    if (clique6_open[d] || r.size() != 10) {
      v.fail(fmt("d=%zu clique k=6 ratio undetermined for %zu seeds", d, clique6_open[d]));
      continue;
    }
    std::sort(r.begin(), r.end());
    const double median = (r[4] + r[5]) / 2;
    medians += fmt(" d=%zu:%.1f", d, median);
    if (median <= 10) v.fail(fmt("d=%zu clique k=6 median pair ratio %.2f", d, median));
  }
  if (ms >= 600000) v.fail(fmt("took %.0f ms", ms));
  if (v.pass)
    v.detail = fmt("%zu runs; match ratio = |Aut| on all %zu fully completed cases; pair ratio >= 1 on %zu exact "
                   "and %zu lower-bound cases, %zu cases capped on both sides; clique k=6 median pair ratio%s; %.0f ms",
                   runs, both_done, both_done, bounded, open, medians.c_str(), ms);
  return v;
}

Verdict extraction_soundness() {
  Verdict v;
  Rng rng(20240601);
  const std::array<std::size_t, 4> node_counts{200, 500, 1000, 2000};
  std::size_t bad = 0, matches = 0, min_k = 99, max_k = 0;
  const auto t0 = Clock::now();
  for (std::size_t i = 0; i < 100; ++i) {
    SynthConfig sc;
    sc.nodes = node_counts[rng.below(node_counts.size())];
    sc.density = rng.between(1, 5);
    sc.node_labels = rng.between(3, 10);
    sc.max_node_multiplicity = rng.between(1, 3);
    sc.edge_labels = rng.between(2, 5);
    sc.max_edge_multiplicity = rng.between(1, 2);
    sc.seed = rng.next();
    const auto g = generate_ba_multigraph(sc);
    const std::size_t k = rng.between(3, 12);
    const auto ex = extract_query(g, {k, rng.next()});
    min_k = std::min(min_k, k);
    max_k = std::max(max_k, k);
    SearchConfig cfg;
    cfg.timeout = std::chrono::seconds(30);
    const auto r = count_matches(ex.query, g, cfg);
    if (!r.completed() || r.matches < 1 || !is_valid_match(ex.query, g, ex.embedding)) ++bad;
    matches += r.matches;
  }
  const double ms = ms_since(t0);
  if (bad) v.fail(fmt("%zu extractions without a match", bad));
  if (ms >= 60000) v.fail(fmt("took %.0f ms", ms));
  if (v.pass) v.detail = fmt("100 queries, k %zu..%zu, all matched (%zu classes total), %.0f ms", min_k, max_k, matches, ms);
  return v;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int shell(const std::string& cmd) { return std::system(cmd.c_str()); }

Verdict determinism() {
  Verdict v;
  const fs::path base = fs::temp_directory_path() / fmt("smm_acceptance_%d", static_cast<int>(getpid()));
  fs::remove_all(base);
  const std::string cli = SMM_CLI_PATH;
  const std::string spec = std::string(SMM_DATA_DIR) + "/bench_small.json";
  std::vector<std::string> outputs;
  std::vector<std::array<std::string, 6>> runs;
  for (int pass = 0; pass < 2; ++pass) {
    const fs::path dir = base / std::to_string(pass);
    fs::create_directories(dir);
    auto p = [&](const char* f) { return (dir / f).string(); };
    // Relative paths inside the run directory keep file names in the output
    // identical across runs.
    const std::string g = "cd '" + dir.string() + "' && " + cli + " --threads 1 --seed 7 ";
    const std::string qt = " --query q.txt --target g.txt";
    int rc = 0;
    rc |= shell(g + "gen --n 400 --d 3 --sigma 4 --nm 2 --gamma 3 --em 2 --seed 11 --out g.txt");
    rc |= shell(g + "extract --graph g.txt --k 5 --seed 5 --out q.txt");
    rc |= shell(g + "match" + qt + " --no-sbc --mask-timing > m.txt");
    rc |= shell(g + "count" + qt + " --stats csv --mask-timing > c.csv");
    rc |= shell(g + "bench --spec '" + spec + "' --mask-timing --out b.csv --ratios-out r.csv");
    rc |= shell(g + "order --query q.txt --random-ties > o.csv");
    if (rc) v.fail("a CLI run failed");
    runs.push_back({read_file(p("g.txt")), read_file(p("q.txt")), read_file(p("m.txt")), read_file(p("c.csv")),
                    read_file(p("b.csv")), read_file(p("r.csv"))});
    outputs.push_back(read_file(p("o.csv")));
  }
  const std::array<const char*, 6> names{"graph", "query", "matches", "count csv", "bench csv", "ratios csv"};
  std::size_t bytes = 0;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (runs[0][i] != runs[1][i]) v.fail(std::string(names[i]) + " differs");
    if (runs[0][i].empty()) v.fail(std::string(names[i]) + " is empty");
    bytes += runs[0][i].size();
  }
  if (outputs[0] != outputs[1]) v.fail("seeded order differs");
  fs::remove_all(base);
  if (v.pass) v.detail = fmt("gen, extract, match, count, bench and seeded order identical across runs (%zu bytes)", bytes);
  return v;
}

Verdict scalability() {
  Verdict v;
  SynthConfig sc;
  sc.nodes = 20000;
  sc.density = 5;
  sc.node_labels = 10;
  sc.max_node_multiplicity = 4;
  sc.edge_labels = 10;
  sc.max_edge_multiplicity = 4;
  sc.seed = 1;
  const auto t0 = Clock::now();
  const auto g = generate_ba_multigraph(sc);
  double worst = 0;
  std::size_t done = 0;
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const auto ex = extract_query(g, {10, s});
    SearchConfig cfg;
    cfg.timeout = std::chrono::minutes(5);
    const auto r = count_matches(ex.query, g, cfg);
    worst = std::max(worst, r.preprocessing_ms + r.elapsed_ms);
    if (r.completed() && r.matches >= 1)
      ++done;
    else
      v.fail(fmt("query %llu: %s, %llu matches", static_cast<unsigned long long>(s), to_string(r.stop),
                 static_cast<unsigned long long>(r.matches)));
  }
  if (v.pass)
    v.detail = fmt("%zu edges; %zu/10 queries completed, slowest %.0f ms, total %.0f ms", g.edge_count(), done, worst,
                   ms_since(t0));
  return v;
}

}  // namespace

// Optional arguments select criteria by number; default runs all.
int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  std::vector<std::pair<int, std::function<Verdict()>>> steps;
  std::pair<Verdict, Verdict> corpus;
  bool corpus_done = false;
  auto corpus_part = [&](int which) {
    if (!corpus_done) corpus = corpus_checks(600), corpus_done = true;
    return which == 0 ? corpus.first : corpus.second;
  };
  steps.emplace_back(1, worked_symmetry);
  steps.emplace_back(2, worked_semantics);
  steps.emplace_back(3, [&] { return corpus_part(0); });
  steps.emplace_back(4, [&] { return corpus_part(1); });
  steps.emplace_back(5, reduction_factors);
  steps.emplace_back(6, extraction_soundness);
  steps.emplace_back(7, determinism);
  steps.emplace_back(8, scalability);

  int failures = 0;
  for (auto& [id, run] : steps) {
    if (!only.empty() && !only.count(id)) continue;
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    failures += !v.pass;
    std::printf("criterion %d %s: %s\n", id, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
  }
  return failures ? 1 : 0;
}
