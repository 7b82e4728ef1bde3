#ifndef KGRAPH_PATHS_HPP
#define KGRAPH_PATHS_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "graph.hpp"

namespace kgraph {

namespace detail {

// Walks normal-form words from v block by block (color 1 first); block c has
// between lo[c] and hi[c] edges.
inline void walk_blocks(const KGraph& g, const Degree& lo, const Degree& hi,
                        const std::function<void(const Path&)>& emit, Path& cur,
                        std::size_t c, std::uint32_t used) {
  if (c == g.rank()) {
    emit(cur);
    return;
  }
  if (used >= lo[c]) walk_blocks(g, lo, hi, emit, cur, c + 1, 0);
  if (used >= hi[c]) return;
  for (auto e : g.edges_into(cur.source, c)) {
    VertexId saved = cur.source;
    cur.word.push_back(e);
    ++cur.degree[c];
    cur.source = g.source(e);
    walk_blocks(g, lo, hi, emit, cur, c, used + 1);
    cur.source = saved;
    --cur.degree[c];
    cur.word.pop_back();
  }
}

inline std::vector<Path> collect(const KGraph& g, VertexId v, const Degree& lo,
                                 const Degree& hi) {
  std::vector<Path> out;
  Path cur = g.vertex(v);
  walk_blocks(g, lo, hi, [&](const Path& p) { out.push_back(p); }, cur, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

inline void require_finite(const KGraph& g, VertexId v) {
  if (!g.component_acyclic(v))
    throw Error(Errc::UnboundedEnumeration,
                "vertex " + g.vertex_name(v) + " lies in a cyclic component; give a degree bound");
}

// Longest possible block length in an acyclic component.
inline Degree acyclic_cap(const KGraph& g) {
  return Degree::filled(g.rank(), static_cast<std::uint32_t>(g.vertex_count()));
}

}  // namespace detail

// vLambda^n.
inline std::vector<Path> paths_of_degree(const KGraph& g, VertexId v, const Degree& n) {
  return detail::collect(g, v, n, n);
}

// Lambda^n.
inline std::vector<Path> paths_of_degree(const KGraph& g, const Degree& n) {
  std::vector<Path> out;
  for (auto v : g.vertices()) {
    auto part = paths_of_degree(g, v, n);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

// Paths with range v and degree <= bound.
inline std::vector<Path> paths_with_range(const KGraph& g, VertexId v, const Degree& bound) {
  return detail::collect(g, v, Degree(g.rank()), bound);
}

// vLambda; the component of v must be acyclic.
inline std::vector<Path> paths_with_range(const KGraph& g, VertexId v) {
  detail::require_finite(g, v);
  return paths_with_range(g, v, detail::acyclic_cap(g));
}

inline std::vector<Path> all_paths(const KGraph& g, const Degree& bound) {
  std::vector<Path> out;
  for (auto v : g.vertices()) {
    auto part = paths_with_range(g, v, bound);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

inline std::vector<Path> all_paths(const KGraph& g) {
  if (!g.acyclic()) throw Error(Errc::UnboundedEnumeration, "graph has a cycle; give a degree bound");
  return all_paths(g, detail::acyclic_cap(g));
}

// Lambda v: paths whose source is v.
inline std::vector<Path> paths_with_source(const KGraph& g, VertexId v, const Degree& bound) {
  std::vector<Path> out;
  for (auto u : g.vertices()) {
    if (g.component(u) != g.component(v)) continue;
    for (auto& p : paths_with_range(g, u, bound))
      if (p.source == v) out.push_back(std::move(p));
  }
  return out;
}

inline std::vector<Path> paths_with_source(const KGraph& g, VertexId v) {
  detail::require_finite(g, v);
  return paths_with_source(g, v, detail::acyclic_cap(g));
}

// Closed paths at v of nonzero degree <= bound.
inline std::vector<Path> cycles_at(const KGraph& g, VertexId v, const Degree& bound) {
  std::vector<Path> out;
  for (auto& p : paths_with_range(g, v, bound))
    if (p.source == v && !p.is_vertex()) out.push_back(std::move(p));
  return out;
}

}  // namespace kgraph

#endif
