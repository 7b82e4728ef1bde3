#ifndef KGRAPH_ALIGNMENT_HPP
#define KGRAPH_ALIGNMENT_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "paths.hpp"
#include "report.hpp"

namespace kgraph {

struct PathPair {
  Path first;
  Path second;
  friend bool operator==(const PathPair&, const PathPair&) = default;
  friend auto operator<=>(const PathPair&, const PathPair&) = default;
};

using MinimalExtensionSet = std::vector<PathPair>;

inline std::string format(const KGraph& g, const PathPair& p) {
  return "(" + g.format(p.first) + ", " + g.format(p.second) + ")";
}

inline void sort_unique(std::vector<Path>& ps) {
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
}

// Lambda^min(lambda, mu): all (alpha, beta) with lambda.alpha = mu.beta of
// degree d(lambda) v d(mu). Enumerates alpha and reads beta off by
// factorization.
inline MinimalExtensionSet lambda_min(const KGraph& g, const Path& lambda, const Path& mu) {
  MinimalExtensionSet out;
  if (lambda.range != mu.range) return out;
  Degree m = lambda.degree.join(mu.degree);
  for (auto& alpha : paths_of_degree(g, lambda.source, m - lambda.degree)) {
    Path eps = g.compose(lambda, alpha);
    if (g.segment(eps, Degree(g.rank()), mu.degree) != mu) continue;
    out.push_back({alpha, g.segment(eps, mu.degree, m)});
  }
  return out;
}

inline bool have_common_extension(const KGraph& g, const Path& lambda, const Path& mu) {
  if (lambda.range != mu.range) return false;
  Degree m = lambda.degree.join(mu.degree);
  for (auto& alpha : paths_of_degree(g, lambda.source, m - lambda.degree))
    if (g.segment(g.compose(lambda, alpha), Degree(g.rank()), mu.degree) == mu) return true;
  return false;
}

struct AlignmentSummary {
  bool finitely_aligned = true;
  std::size_t pairs_checked = 0;
  std::size_t largest = 0;
};

// Every Lambda^min in a finite graph is finite; this tallies them for all
// pairs of paths with degree <= bound.
inline AlignmentSummary check_finite_alignment(const KGraph& g, const Degree& bound) {
  AlignmentSummary s;
  for (auto v : g.vertices()) {
    auto ps = paths_with_range(g, v, bound);
    for (auto& a : ps)
      for (auto& b : ps) {
        ++s.pairs_checked;
        s.largest = std::max(s.largest, lambda_min(g, a, b).size());
      }
  }
  return s;
}

inline bool is_finitely_aligned(const KGraph& g, const Degree& bound) {
  return check_finite_alignment(g, bound).finitely_aligned;
}

// Ext(lambda; E).
inline std::vector<Path> ext(const KGraph& g, const Path& lambda, const std::vector<Path>& e) {
  std::vector<Path> out;
  for (auto& mu : e) {
    if (mu.range != lambda.range)
      throw Error(Errc::RangeMismatch, g.format(mu) + " does not start at r(" +
                                           g.format(lambda) + ")");
    for (auto& [alpha, beta] : lambda_min(g, lambda, mu)) out.push_back(alpha);
  }
  sort_unique(out);
  return out;
}

struct ExhaustiveResult {
  bool exhaustive = false;
  std::optional<Path> witness;  // a path with no common extension with E
};

namespace detail {

// Does some mu in vLambda extending mu0 by colors in `free` avoid E? With
// good = { alpha : mu0.alpha has a prefix in E, d(alpha) supported off
// `free` }, an extension mu0.rho fails iff no alpha in good fits into a
// rectangle with rho. The search tracks, for each good alpha, the set of
// paths alpha' at s(rho) with rho.alpha' = alpha.rho'; that state is finite,
// so the breadth-first search terminates.
inline std::optional<Path> failing_extension(const KGraph& g, const Path& mu0,
                                             const std::vector<Path>& good,
                                             const std::vector<bool>& free) {
  using Pair = std::pair<std::size_t, Path>;
  using State = std::pair<VertexId, std::vector<Pair>>;
  std::vector<Pair> start;
  for (std::size_t i = 0; i < good.size(); ++i) start.emplace_back(i, good[i]);
  std::set<State> seen{{mu0.source, start}};
  std::deque<std::pair<State, Path>> queue{{{mu0.source, start}, mu0}};
  while (!queue.empty()) {
    auto [state, mu] = std::move(queue.front());
    queue.pop_front();
    for (std::size_t c = 0; c < g.rank(); ++c) {
      if (!free[c]) continue;
      for (auto nu : g.edges_into(state.first, c)) {
        Path step = g.edge(nu);
        std::vector<Pair> next;
        for (auto& [i, a] : state.second)
          for (auto& a2 : paths_of_degree(g, g.source(nu), a.degree))
            if (g.segment(g.compose(step, a2), Degree(g.rank()), a.degree) == a)
              next.emplace_back(i, a2);
        Path longer = g.compose(mu, step);
        if (next.empty()) return longer;
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        State s{g.source(nu), std::move(next)};
        if (seen.insert(s).second) queue.emplace_back(std::move(s), std::move(longer));
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Exact in every finite k-graph. Acyclic components are decided by running
// through vLambda; otherwise every mu splits as mu0.rho with d(mu0) <= the
// join M of d(E) and rho using only colors where mu0 already reached M, and
// the rho part is decided by detail::failing_extension.
inline ExhaustiveResult check_exhaustive(const KGraph& g, VertexId v, const std::vector<Path>& e) {
  for (auto& l : e)
    if (l.range != v)
      throw Error(Errc::RangeMismatch, g.format(l) + " does not start at " + g.vertex_name(v));
  auto passes = [&](const Path& mu) {
    for (auto& l : e)
      if (have_common_extension(g, l, mu)) return true;
    return false;
  };
  if (e.empty()) return {false, g.vertex(v)};
  if (g.component_acyclic(v)) {
    for (auto& mu : paths_with_range(g, v))
      if (!passes(mu)) return {false, mu};
    return {true, std::nullopt};
  }
  Degree top(g.rank());
  for (auto& l : e) top = top.join(l.degree);
  for (auto& mu0 : paths_with_range(g, v, top)) {
    std::vector<bool> free(g.rank());
    for (std::size_t c = 0; c < g.rank(); ++c) free[c] = mu0.degree[c] == top[c];
    std::vector<Path> good;
    for (auto& l : e) {
      Degree t = l.degree.join(mu0.degree) - mu0.degree;
      for (auto& a : paths_of_degree(g, mu0.source, t))
        if (g.segment(g.compose(mu0, a), Degree(g.rank()), l.degree) == l) good.push_back(a);
    }
    sort_unique(good);
    if (good.empty()) return {false, mu0};
    if (auto w = detail::failing_extension(g, mu0, good, free)) return {false, *w};
  }
  return {true, std::nullopt};
}

inline bool is_exhaustive(const KGraph& g, VertexId v, const std::vector<Path>& e) {
  return check_exhaustive(g, v, e).exhaustive;
}

namespace detail {

// Minimal hitting sets of a family of index sets, by branching on the
// elements of an unhit set and keeping only irredundant partial choices.
class Transversals {
 public:
  explicit Transversals(std::vector<std::vector<std::size_t>> family) : family_(std::move(family)) {
    // Only the inclusion-minimal members matter.
    std::sort(family_.begin(), family_.end(),
              [](auto& a, auto& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
    std::vector<std::vector<std::size_t>> kept;
    for (auto& s : family_) {
      bool redundant = false;
      for (auto& t : kept)
        if (std::includes(s.begin(), s.end(), t.begin(), t.end())) redundant = true;
      if (!redundant) kept.push_back(s);
    }
    family_ = std::move(kept);
  }

  std::set<std::vector<std::size_t>> run() {
    std::vector<std::size_t> chosen;
    grow(chosen);
    return found_;
  }

 private:
  bool hits(const std::vector<std::size_t>& set, const std::vector<std::size_t>& chosen) const {
    for (auto x : chosen)
      if (std::binary_search(set.begin(), set.end(), x)) return true;
    return false;
  }

  // Every chosen element must be the only chosen element of some member.
  bool irredundant(const std::vector<std::size_t>& chosen) const {
    for (auto x : chosen) {
      bool priv = false;
      for (auto& s : family_) {
        if (!std::binary_search(s.begin(), s.end(), x)) continue;
        std::size_t n = 0;
        for (auto y : chosen) n += std::binary_search(s.begin(), s.end(), y);
        if (n == 1) {
          priv = true;
          break;
        }
      }
      if (!priv) return false;
    }
    return true;
  }

  void grow(std::vector<std::size_t>& chosen) {
    if (!irredundant(chosen)) return;
    const std::vector<std::size_t>* unhit = nullptr;
    for (auto& s : family_)
      if (!hits(s, chosen) && (!unhit || s.size() < unhit->size())) unhit = &s;
    if (!unhit) {
      auto sorted = chosen;
      std::sort(sorted.begin(), sorted.end());
      found_.insert(sorted);
      return;
    }
    for (auto x : *unhit) {
      chosen.push_back(x);
      grow(chosen);
      chosen.pop_back();
    }
  }

  std::vector<std::vector<std::size_t>> family_;
  std::set<std::vector<std::size_t>> found_;
};

}  // namespace detail

// The inclusion-minimal finite exhaustive subsets of vLambda whose members
// have degree <= cap (all of vLambda when cap is empty, which needs an
// acyclic component). A set is exhaustive iff it meets
// compat(mu) = { lambda : Lambda^min(lambda, mu) nonempty } for every mu, so
// the answer is the minimal transversals of that family. In cyclic
// components the family starts from mu up to the cap and grows by the
// witnesses check_exhaustive reports until every transversal is exhaustive.
inline std::vector<std::vector<Path>> fe_sets(const KGraph& g, VertexId v,
                                              const std::optional<Degree>& cap = std::nullopt) {
  std::vector<Path> cand = cap ? paths_with_range(g, v, *cap) : paths_with_range(g, v);
  auto compat = [&](const Path& mu) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < cand.size(); ++i)
      if (have_common_extension(g, cand[i], mu)) s.push_back(i);
    return s;
  };
  std::vector<std::vector<std::size_t>> family;
  for (auto& mu : cand) family.push_back(compat(mu));
  if (g.component_acyclic(v))
    for (auto& mu : paths_with_range(g, v))
      if (!cap || !mu.degree.le(*cap)) family.push_back(compat(mu));
  while (true) {
    auto found = detail::Transversals(family).run();
    std::vector<std::vector<Path>> out;
    bool grew = false;
    for (auto& t : found) {
      std::vector<Path> set;
      for (auto i : t) set.push_back(cand[i]);
      auto r = check_exhaustive(g, v, set);
      if (!r.exhaustive) {
        family.push_back(compat(*r.witness));
        grew = true;
      }
      out.push_back(std::move(set));
    }
    if (grew) continue;
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
  }
}

// For random v, lambda in vLambda and minimal E in vFE with degrees <= cap,
// Ext(lambda; E) must be exhaustive at s(lambda). trials == 0 runs every
// combination.
inline Check property_ext_preserves_fe(const KGraph& g, std::size_t trials, std::uint64_t seed,
                                       const Degree& cap) {
  Check check{"Ext(lambda;E) is finite exhaustive at s(lambda)"};
  struct Site {
    std::vector<Path> lambdas;
    std::vector<std::vector<Path>> sets;
  };
  std::vector<Site> sites;
  for (auto v : g.vertices()) sites.push_back({paths_with_range(g, v, cap), fe_sets(g, v, cap)});
  auto run = [&](const Path& l, const std::vector<Path>& e) {
    ++check.instances;
    auto x = ext(g, l, e);
    auto r = check_exhaustive(g, l.source, x);
    if (!r.exhaustive) {
      std::string s = "lambda=" + g.format(l) + " E={";
      for (auto& p : e) s += g.format(p) + " ";
      check.fail(s + "} fails at " + g.format(*r.witness));
    }
  };
  if (trials == 0) {
    for (auto& site : sites)
      for (auto& l : site.lambdas)
        for (auto& e : site.sets) run(l, e);
    return check;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    auto& site = sites[rng() % sites.size()];
    run(site.lambdas[rng() % site.lambdas.size()], site.sets[rng() % site.sets.size()]);
  }
  return check;
}

// Ext(lambda2; Ext(lambda1; E)) = Ext(lambda1 lambda2; E) on random triples:
// lambda1 from a random vertex, lambda2 from s(lambda1), E a random subset of
// r(lambda1)Lambda, all of degree <= cap.
inline Check property_ext_transitive(const KGraph& g, std::size_t trials, std::uint64_t seed,
                                     const Degree& cap) {
  Check check{"Ext(lambda2; Ext(lambda1; E)) = Ext(lambda1 lambda2; E)"};
  std::mt19937_64 rng(seed);
  auto vs = g.vertices();
  for (std::size_t t = 0; t < trials; ++t) {
    VertexId v = vs[rng() % vs.size()];
    auto here = paths_with_range(g, v, cap);
    const Path& l1 = here[rng() % here.size()];
    auto there = paths_with_range(g, l1.source, cap);
    const Path& l2 = there[rng() % there.size()];
    std::vector<Path> e;
    std::size_t want = 1 + rng() % 3;
    for (std::size_t i = 0; i < want; ++i) e.push_back(here[rng() % here.size()]);
    sort_unique(e);
    ++check.instances;
    if (ext(g, l2, ext(g, l1, e)) != ext(g, g.compose(l1, l2), e)) {
      std::string s = "lambda1=" + g.format(l1) + " lambda2=" + g.format(l2) + " E={";
      for (auto& p : e) s += g.format(p) + " ";
      check.fail(s + "}");
    }
  }
  return check;
}

}  // namespace kgraph

#endif
