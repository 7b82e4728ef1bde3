#ifndef KGRAPH_REPORT_HPP
#define KGRAPH_REPORT_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace kgraph {

// Outcome of one property checked over many instances. Failures carry a
// human-readable witness; `unknown` counts instances a bounded search could
// not decide.
struct Check {
  std::string name;
  std::size_t instances = 0;
  std::vector<std::string> failures;
  std::size_t unknown = 0;

  void fail(std::string witness) { failures.push_back(std::move(witness)); }
  bool passed() const { return failures.empty(); }
};

}  // namespace kgraph

#endif
