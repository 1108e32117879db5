// smm: command-line front end for matching, inspection, generation and
// benchmarking. Run `smm --help` for the subcommand list.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "smm/smm.hpp"

namespace {

using nlohmann::json;
using namespace smm;

enum ExitCode { kOk = 0, kFailure = 1, kParseFailure = 2, kIncomplete = 3, kBadArguments = 4 };

struct Globals {
  std::size_t threads = 1;
  std::uint64_t seed = 1;
  std::string format = "csv";
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double v, const char* fmt = "%.3f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

// match / count ------------------------------------------------------------

struct MatchArgs {
  std::string query, target, emit, stats;
  bool no_sbc = false;
  bool mask_timing = false;
  double timeout = 0;
  std::uint64_t cap = 0;
};

int run_match(const MatchArgs& a, const Globals& g) {
  const auto query = read_graph_file(a.query);
  const auto target = read_graph_file(a.target);
  SearchConfig cfg;
  cfg.sbc_enabled = !a.no_sbc;
  if (a.timeout > 0) cfg.timeout = std::chrono::duration<double>(a.timeout);
  if (a.cap > 0) cfg.candidate_cap = a.cap;
  std::string lines;
  if (a.emit == "matches") {
    cfg.emit = EmitMode::kCallback;
    cfg.on_match = [&](std::span<const NodeId> m) {
      lines += format_match(m);
      lines += '\n';
      if (lines.size() > (1 << 16)) {
        std::cout << lines;
        lines.clear();
      }
    };
  }
  const auto r = count_matches(query, target, cfg);
  std::cout << lines;

  const std::string stats = a.stats.empty() ? g.format : a.stats;
  const std::string elapsed = a.mask_timing ? "0" : num(r.elapsed_ms);
  if (stats == "json") {
    json j{{"query", a.query},
           {"target", a.target},
           {"sbc", cfg.sbc_enabled},
           {"matches", r.matches},
           {"candidate_pairs", r.candidate_pairs},
           {"elapsed_ms", a.mask_timing ? 0.0 : r.elapsed_ms},
           {"preprocessing_ms", a.mask_timing ? 0.0 : r.preprocessing_ms},
           {"completed", r.completed()},
           {"stop", to_string(r.stop)}};
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "query,target,sbc,matches,candidate_pairs,elapsed_ms,completed\n"
              << a.query << ',' << a.target << ',' << (cfg.sbc_enabled ? 1 : 0) << ',' << r.matches << ','
              << r.candidate_pairs << ',' << elapsed << ',' << (r.completed() ? 1 : 0) << '\n';
  }
  return r.completed() ? kOk : kIncomplete;
}

// inspection ----------------------------------------------------------------

int run_domains(const std::string& qpath, const std::string& tpath, const Globals& g) {
  const auto target = read_graph_file(tpath);
  const auto plan = prepare_match(read_graph_file(qpath), target, false);
  if (g.format == "json") {
    json rows = json::array();
    for (NodeId q = 0; q < plan.query.node_count(); ++q)
      rows.push_back({{"query_node", q},
                      {"domain_size_initial", plan.initial_domains[q].size()},
                      {"domain_size_after_ac", plan.domains[q].size()},
                      {"domain", plan.domains[q]}});
    std::cout << rows.dump() << '\n';
    return kOk;
  }
  std::cout << "query_node,domain_size_initial,domain_size_after_ac\n";
  for (NodeId q = 0; q < plan.query.node_count(); ++q)
    std::cout << q << ',' << plan.initial_domains[q].size() << ',' << plan.domains[q].size() << '\n';
  return kOk;
}

int run_order(const std::string& qpath, bool random_ties, const Globals& g) {
  const auto query = read_graph_file(qpath);
  const auto o = order_query_nodes(query, random_ties ? std::optional<std::uint64_t>(g.seed) : std::nullopt);
  auto parent = [&](NodeId v) { return o.parent[v] == kNoNode ? std::string("-") : std::to_string(o.parent[v]); };
  if (g.format == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < o.size(); ++i) {
      const auto& s = o.steps[i];
      rows.push_back({{"position", i},
                      {"node_id", s.node},
                      {"parent_id", o.parent[s.node] == kNoNode ? json(nullptr) : json(o.parent[s.node])},
                      {"vis", s.vis},
                      {"neig", s.neig},
                      {"unv", s.unv}});
    }
    std::cout << rows.dump() << '\n';
    return kOk;
  }
  std::cout << "position,node_id,parent_id,vis,neig,unv\n";
  for (std::size_t i = 0; i < o.size(); ++i) {
    const auto& s = o.steps[i];
    std::cout << i << ',' << s.node << ',' << parent(s.node) << ',' << s.vis << ',' << s.neig << ',' << s.unv << '\n';
  }
  return kOk;
}

int run_automorphisms(const std::string& qpath, bool as_json) {
  const auto query = read_graph_file(qpath);
  const auto a = compute_automorphism_matrix(query);
  const auto orbits = compute_orbits(a);
  const auto c = compute_symm_break_cond(a);
  if (as_json) {
    json pairs = json::array();
    for (auto [x, y] : c.pairs) pairs.push_back({x, y});
    json j{{"nodes", query.node_count()},
           {"automorphisms", a.rows},
           {"orbits", orbits.orbits},
           {"conditions", pairs}};
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  auto line = [](const std::vector<NodeId>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
  };
  std::cout << "automorphisms " << a.size() << '\n';
  for (const auto& row : a.rows) std::cout << line(row) << '\n';
  std::cout << "orbits " << orbits.orbits.size() << '\n';
  for (const auto& o : orbits.orbits) std::cout << line(o) << '\n';
  std::cout << "conditions " << c.size() << '\n';
  for (auto [x, y] : c.pairs) std::cout << x << " < " << y << '\n';
  return kOk;
}

int run_oracle(const std::string& qpath, const std::string& tpath) {
  const auto query = read_graph_file(qpath);
  const auto target = read_graph_file(tpath);
  auto grouped = group_by_automorphism(brute_force_matches(query, target), compute_automorphism_matrix(query));
  for (const auto& m : grouped.matches) std::cout << format_match(m.target) << '\n';
  std::cout << "matches " << grouped.matches.size() << " classes " << grouped.classes.size() << '\n';
  return kOk;
}

// generation ----------------------------------------------------------------

int run_gen(SynthConfig cfg, const std::string& out) {
  const auto g = generate_ba_multigraph(cfg);
  std::ostringstream text;
  text << "# generator ba-multigraph rng " << Rng::kName << " n " << cfg.nodes << " d " << cfg.density << " sigma "
       << cfg.node_labels << " nm " << cfg.max_node_multiplicity << " gamma " << cfg.edge_labels << " em "
       << cfg.max_edge_multiplicity << " seed " << cfg.seed << '\n'
       << serialize_graph(g);
  write_or_print(out, text.str());
  return kOk;
}

int run_extract(const std::string& gpath, QueryExtractConfig cfg, const std::string& out,
                const std::string& embedding_out) {
  const auto g = read_graph_file(gpath);
  const auto ex = extract_query(g, cfg);
  std::ostringstream text;
  text << "# extracted rng " << Rng::kName << " k " << cfg.nodes << " seed " << cfg.seed << '\n'
       << serialize_graph(ex.query);
  write_or_print(out, text.str());
  if (!embedding_out.empty()) {
    std::ostringstream emb;
    for (std::size_t q = 0; q < ex.embedding.size(); ++q) emb << q << ' ' << ex.embedding[q] << '\n';
    write_or_print(embedding_out, emb.str());
  }
  return kOk;
}

// bench ---------------------------------------------------------------------

//  {
//    "repetitions": 1, "timeout": 30, "candidate_cap": 1000000,
//    "pairs": [{"query": "q.txt", "target": "t.txt"}],
//    "grid": {"nodes": 100, "densities": [10], "seeds": [1],
//             "topologies": ["path", "star", "clique"], "sizes": [4, 5]}
//  }
// Relative file names are resolved against the spec's directory.
std::vector<BenchCase> bench_cases(const json& spec, const std::filesystem::path& base, BenchOptions& opt) {
  if (!spec.is_object()) throw UsageError("bench spec must be a JSON object");
  opt.repetitions = spec.value("repetitions", std::size_t{1});
  if (opt.repetitions < 1) throw UsageError("repetitions must be >= 1");
  if (spec.contains("timeout")) opt.timeout = std::chrono::duration<double>(spec["timeout"].get<double>());
  if (spec.contains("candidate_cap")) opt.candidate_cap = spec["candidate_cap"].get<std::uint64_t>();

  std::vector<BenchCase> cases;
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
  };
  for (const auto& p : spec.value("pairs", json::array())) {
    const std::string q = p.at("query").get<std::string>();
    const std::string t = p.at("target").get<std::string>();
    cases.push_back({q, t, "file", std::make_shared<const LabeledMultigraph>(read_graph_file(resolve(q).string())),
                     std::make_shared<const LabeledMultigraph>(read_graph_file(resolve(t).string()))});
  }
  if (spec.contains("grid")) {
    const auto& gj = spec["grid"];
    BenchGrid grid;
    grid.nodes = gj.value("nodes", std::size_t{100});
    grid.densities = gj.value("densities", std::vector<std::size_t>{});
    grid.seeds = gj.value("seeds", std::vector<std::uint64_t>{});
    grid.sizes = gj.value("sizes", std::vector<std::size_t>{});
    for (const auto& name : gj.value("topologies", std::vector<std::string>{})) {
      auto t = parse_topology(name);
      if (!t) throw UsageError("unknown topology '" + name + "'");
      grid.topologies.push_back(*t);
    }
    auto more = materialize_grid(grid);
    cases.insert(cases.end(), more.begin(), more.end());
  }
  return cases;
}

std::string bench_json(const BenchResult& res, bool mask) {
  json rows = json::array();
  for (const auto& r : res.rows)
    rows.push_back({{"query", r.query},
                    {"target", r.target},
                    {"topology", r.topology},
                    {"k", r.k},
                    {"aut_count", r.aut_count},
                    {"sbc", r.sbc},
                    {"matches", r.matches},
                    {"candidate_pairs", r.candidate_pairs},
                    {"elapsed_ms", mask ? 0.0 : r.elapsed_ms},
                    {"completed", r.completed}});
  return rows.dump(1) + "\n";
}

int run_bench_cmd(const std::string& spec_path, const std::string& out, const std::string& ratios_out, bool mask,
                  const Globals& g) {
  json spec;
  try {
    std::ifstream in(spec_path);
    if (!in) throw std::runtime_error("cannot open " + spec_path);
    spec = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("bench spec: ") + e.what());
  }
  BenchOptions opt;
  opt.threads = g.threads;
  const auto cases = bench_cases(spec, std::filesystem::path(spec_path).parent_path(), opt);
  const auto res = run_bench(cases, opt);
  write_or_print(out, g.format == "json" ? bench_json(res, mask) : bench_csv(res, mask));
  if (!ratios_out.empty()) write_text_file(ratios_out, bench_ratios_csv(res, mask));
  if (res.quotient_violations()) {
    std::cerr << "error: " << res.quotient_violations() << " case(s) violate matches(no-sbc) = matches(sbc) * |Aut|\n";
    return kFailure;
  }
  return res.any_incomplete() ? kIncomplete : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sub-multigraph matching with symmetry breaking"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--threads", g.threads, "Worker threads for bench")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized steps");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  int code = kOk;
  std::function<int()> action;

  MatchArgs ma;
  for (const char* name : {"match", "count"}) {
    auto* sub = app.add_subcommand(name, std::string(name) == "match" ? "List matches of a query in a target"
                                                                      : "Count matches of a query in a target");
    const bool listing = std::string(name) == "match";
    sub->add_option("--query", ma.query, "Query graph file")->required();
    sub->add_option("--target", ma.target, "Target graph file")->required();
    sub->add_flag("--no-sbc", ma.no_sbc, "Disable symmetry breaking conditions");
    sub->add_option("--timeout", ma.timeout, "Search budget in seconds")->check(CLI::NonNegativeNumber);
    sub->add_option("--cap", ma.cap, "Stop after this many candidate pairs");
    sub->add_option("--emit", ma.emit, "Emit matches or only the count")
        ->check(CLI::IsMember({"matches", "count"}))
        ->default_str(listing ? "matches" : "count");
    sub->add_option("--stats", ma.stats, "Stats format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--mask-timing", ma.mask_timing, "Print 0 for timings");
    sub->callback([&, listing]() {
      if (ma.emit.empty()) ma.emit = listing ? "matches" : "count";
      action = [&]() { return run_match(ma, g); };
    });
  }

  std::string qpath, tpath;
  auto* dom = app.add_subcommand("domains", "Domain sizes before and after arc consistency");
  dom->add_option("--query", qpath)->required();
  dom->add_option("--target", tpath)->required();
  dom->callback([&]() { action = [&]() { return run_domains(qpath, tpath, g); }; });

  bool random_ties = false;
  auto* ord = app.add_subcommand("order", "Query node processing order");
  ord->add_option("--query", qpath)->required();
  ord->add_flag("--random-ties", random_ties, "Break final ties at random using --seed");
  ord->callback([&]() { action = [&]() { return run_order(qpath, random_ties, g); }; });

  bool as_json = false;
  auto* aut = app.add_subcommand("automorphisms", "Automorphisms, orbits and breaking conditions of a query");
  aut->add_option("--query", qpath)->required();
  aut->add_flag("--json", as_json);
  aut->callback([&]() { action = [&]() { return run_automorphisms(qpath, as_json || g.format == "json"); }; });

  SynthConfig sc;
  std::optional<std::uint64_t> local_seed;
  std::string out, extra_out;
  auto* gen = app.add_subcommand("gen", "Generate a preferential-attachment multigraph");
  gen->add_option("--n", sc.nodes)->required();
  gen->add_option("--d", sc.density)->required();
  gen->add_option("--sigma", sc.node_labels);
  gen->add_option("--nm", sc.max_node_multiplicity);
  gen->add_option("--gamma", sc.edge_labels);
  gen->add_option("--em", sc.max_edge_multiplicity);
  gen->add_option("--seed", local_seed);
  gen->add_option("--out", out);
  gen->callback([&]() {
    action = [&]() {
      sc.seed = local_seed.value_or(g.seed);
      return run_gen(sc, out);
    };
  });

  std::string gpath;
  QueryExtractConfig qc;
  auto* ext = app.add_subcommand("extract", "Cut a random-walk query out of a graph");
  ext->add_option("--graph", gpath)->required();
  ext->add_option("--k", qc.nodes)->required();
  ext->add_option("--seed", local_seed);
  ext->add_option("--out", out);
  ext->add_option("--embedding-out", extra_out);
  ext->callback([&]() {
    action = [&]() {
      qc.seed = local_seed.value_or(g.seed);
      return run_extract(gpath, qc, out, extra_out);
    };
  });

  std::string spec_path;
  bool mask = false;
  auto* bench = app.add_subcommand("bench", "Run cases with and without breaking conditions");
  bench->add_option("--spec", spec_path, "JSON bench spec")->required();
  bench->add_option("--out", out, "Per-run CSV (default stdout)");
  bench->add_option("--ratios-out", extra_out, "Per-case ratio CSV");
  bench->add_flag("--mask-timing", mask, "Print 0 for timings");
  bench->callback([&]() { action = [&]() { return run_bench_cmd(spec_path, out, extra_out, mask, g); }; });

  auto* orc = app.add_subcommand("oracle", "Brute-force reference matcher")->group("");
  orc->add_option("--query", qpath)->required();
  orc->add_option("--target", tpath)->required();
  orc->callback([&]() { action = [&]() { return run_oracle(qpath, tpath); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadArguments;
  }
  try {
    code = action();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParseFailure;
  } catch (const SpecError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParseFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kBadArguments;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  std::cout.flush();
  return code;
}
