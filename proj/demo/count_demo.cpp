// Counts a query in a target with and without symmetry breaking.
//   count_demo [query.txt target.txt]
// Without arguments a triangle is matched in K4.

#include <iostream>

#include "smm/engine.hpp"
#include "smm/symmetry.hpp"
#include "smm/text_format.hpp"

int main(int argc, char** argv) {
  using namespace smm;
  LabeledMultigraph query, target;
  if (argc == 3) {
    query = read_graph_file(argv[1]);
    target = read_graph_file(argv[2]);
  } else {
    query = parse_graph("multigraph undirected\nv 0\nv 1\nv 2\ne 0 1 e\ne 1 2 e\ne 0 2 e\n");
    target = parse_graph(
        "multigraph undirected\nv 0\nv 1\nv 2\nv 3\n"
        "e 0 1 e\ne 0 2 e\ne 0 3 e\ne 1 2 e\ne 1 3 e\ne 2 3 e\n");
  }

  const auto aut = compute_automorphism_matrix(query);
  std::cout << "automorphisms: " << aut.size() << "\n";
  for (auto [a, b] : compute_symm_break_cond(aut).pairs) std::cout << "  condition q" << a << " < q" << b << "\n";

  for (bool sbc : {true, false}) {
    SearchConfig cfg;
    cfg.sbc_enabled = sbc;
    cfg.emit = EmitMode::kCollect;
    const auto r = count_matches(query, target, cfg);
    std::cout << (sbc ? "with" : "without") << " conditions: " << r.matches << " matches, " << r.candidate_pairs
              << " candidate pairs\n";
    for (const auto& m : r.collected) std::cout << "  " << format_match(m.target) << "\n";
  }
}
