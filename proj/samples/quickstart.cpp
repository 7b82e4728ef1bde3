// Builds the example 2-graph with three tau edges, asks a few questions of it
// and prints the answers.
#include <iostream>

#include <kgraph/kgraph.hpp>

using namespace kgraph;

int main() {
  KGraph g = build(builtin::paper_ex2(3));
  std::cout << g.name() << ": " << g.vertex_count() << " vertices, " << all_paths(g).size() << " paths\n";

  Path mu = g.parse_path("mu"), lambda = g.parse_path("lambda");
  VertexId v = g.vertex_id("v");
  std::cout << "{mu} exhaustive at v: " << std::boolalpha << is_exhaustive(g, v, {mu}) << "\n";
  auto r = check_exhaustive(g, v, {lambda});
  std::cout << "{lambda} exhaustive at v: " << r.exhaustive;
  if (r.witness) std::cout << " (misses " << g.format(*r.witness) << ")";
  std::cout << "\n";

  std::cout << "minimal finite exhaustive sets at F:\n";
  for (auto& e : fe_sets(g, g.vertex_id("F"))) {
    std::cout << "  {";
    for (std::size_t i = 0; i < e.size(); ++i) std::cout << (i ? ", " : "") << g.format(e[i]);
    std::cout << "}\n";
  }

  std::cout << "boundary paths at v:\n";
  for (auto& x : boundary_paths(g, v).paths) std::cout << "  " << format(g, x) << "\n";

  auto f = SemigroupElement::make(g, {{g.parse_path("lambda.zeta"), g.parse_path("delta")}});
  XPath x = XPath::finite(g.parse_path("delta.eta"));
  Germ h = germ_of(g, f, x);
  std::cout << "germ " << format(g, h) << " moves " << format(g, x) << " to " << format(g, germ_range(g, h)) << "\n";

  std::cout << "condition A: " << verdict_name(check_condition_A(g).verdict) << "\n";
  bool ck = true;
  for (auto& c : verify_relations(g, ck_family(g))) ck = ck && c.passed();
  std::cout << "boundary representation satisfies every relation: " << ck << "\n";
}
