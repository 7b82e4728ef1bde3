#ifndef KGRAPH_PATHSPACE_HPP
#define KGRAPH_PATHSPACE_HPP

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "semigroup.hpp"

namespace kgraph {

// A point of the path space: either a finite path, or prefix.cycle.cycle...
// with the cycle closed at s(prefix). Every boundary path of a finite
// k-graph that we construct has one of these two shapes.
class XPath {
 public:
  static XPath finite(Path p) {
    XPath x;
    x.prefix_ = std::move(p);
    return x;
  }

  static XPath periodic(const KGraph& g, Path prefix, Path cycle) {
    if (cycle.is_vertex() || cycle.range != cycle.source || prefix.source != cycle.range)
      throw Error(Errc::BadParams, g.format(cycle) + " is not a cycle at s(" +
                                       g.format(prefix) + ")");
    XPath x;
    x.prefix_ = std::move(prefix);
    x.cycle_ = std::move(cycle);
    return x;
  }

  bool is_finite() const { return !cycle_; }
  const Path& prefix() const { return prefix_; }
  const Path& cycle() const { return *cycle_; }
  VertexId range() const { return prefix_.range; }

  XDegree degree() const {
    std::vector<std::optional<std::uint32_t>> c;
    for (std::size_t i = 0; i < prefix_.degree.rank(); ++i) {
      if (cycle_ && cycle_->degree[i] > 0)
        c.emplace_back(std::nullopt);
      else
        c.emplace_back(prefix_.degree[i]);
    }
    return XDegree(std::move(c));
  }

  // Positions n worth testing: every shift sigma^n x equals one with n in
  // this box, up to whole cycles.
  Degree period_box() const {
    return cycle_ ? prefix_.degree + cycle_->degree : prefix_.degree;
  }

 private:
  Path prefix_;
  std::optional<Path> cycle_;
};

// prefix.cycle^j with d >= n, defined on the finite coordinates only.
inline Path unroll(const KGraph& g, const XPath& x, const Degree& n) {
  if (x.is_finite()) return x.prefix();
  Path p = x.prefix();
  while (!n.le(p.degree)) {
    for (std::size_t i = 0; i < n.rank(); ++i)
      if (x.cycle().degree[i] == 0 && n[i] > p.degree[i])
        throw Error(Errc::DegreeOutOfRange,
                    n.str() + " exceeds the finite degree " + x.degree().str());
    p = g.compose(p, x.cycle());
  }
  return p;
}

// x(m, n).
inline Path xsegment(const KGraph& g, const XPath& x, const Degree& m, const Degree& n) {
  return g.segment(unroll(g, x, n), m, n);
}

inline Path initial(const KGraph& g, const XPath& x, const Degree& n) {
  return xsegment(g, x, Degree(g.rank()), n);
}

// Is lambda = x(0, d(lambda))?
inline bool is_initial(const KGraph& g, const Path& lambda, const XPath& x) {
  return lambda.range == x.range() && x.degree().contains(lambda.degree) &&
         initial(g, x, lambda.degree) == lambda;
}

// sigma^m x.
inline XPath shift(const KGraph& g, const XPath& x, const Degree& m) {
  if (!x.degree().contains(m))
    throw Error(Errc::DegreeOutOfRange, m.str() + " exceeds " + x.degree().str());
  if (x.is_finite()) return XPath::finite(g.segment(x.prefix(), m, x.prefix().degree));
  // Unroll far enough that the prefix covers m, then drop the first m.
  Path p = unroll(g, x, m);
  return XPath::periodic(g, g.segment(p, m, p.degree), x.cycle());
}

// lambda x.
inline XPath prepend(const KGraph& g, const Path& lambda, const XPath& x) {
  if (x.is_finite()) return XPath::finite(g.compose(lambda, x.prefix()));
  return XPath::periodic(g, g.compose(lambda, x.prefix()), x.cycle());
}

// Two ultimately periodic paths agree iff their initial segments agree up to
// the larger prefix plus both cycles on the infinite coordinates.
inline bool xpath_eq(const KGraph& g, const XPath& x, const XPath& y) {
  if (x.range() != y.range() || !(x.degree() == y.degree())) return false;
  if (x.is_finite()) return x.prefix() == y.prefix();
  Degree b = x.prefix().degree.join(y.prefix().degree) + x.cycle().degree + y.cycle().degree;
  for (std::size_t i = 0; i < b.rank(); ++i)
    if (!x.degree().infinite(i)) b[i] = x.degree().at(i);
  return initial(g, x, b) == initial(g, y, b);
}

inline std::string format(const KGraph& g, const XPath& x) {
  if (x.is_finite()) return "finite: " + g.format(x.prefix());
  return "up: " + g.format(x.prefix()) + " ; " + g.format(x.cycle());
}

// "finite: <path>" or "up: <prefix> ; <cycle>"; a bare path is finite.
inline XPath parse_xpath(const KGraph& g, std::string text) {
  auto trim = [](std::string s) {
    auto a = s.find_first_not_of(" \t\r\n");
    auto b = s.find_last_not_of(" \t\r\n");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  text = trim(text);
  if (text.rfind("up:", 0) == 0) {
    auto body = text.substr(3);
    auto semi = body.find(';');
    if (semi == std::string::npos) throw Error(Errc::ParseError, "expected 'up: prefix ; cycle'");
    return XPath::periodic(g, g.parse_path(trim(body.substr(0, semi))),
                           g.parse_path(trim(body.substr(semi + 1))));
  }
  if (text.rfind("finite:", 0) == 0) text = trim(text.substr(7));
  return XPath::finite(g.parse_path(text));
}

// ---- the action of S_Lambda on the path space ----

// The pair (lambda, mu) of F whose mu is an initial segment of x, if any.
// Orthogonality of F makes it unique.
inline std::optional<PathPair> in_domain(const KGraph& g, const XPath& x,
                                         const SemigroupElement& f) {
  for (auto& p : f.pairs())
    if (is_initial(g, p.second, x)) return p;
  return std::nullopt;
}

inline bool in_DF(const KGraph& g, const XPath& x, const SemigroupElement& f) {
  return in_domain(g, x, f).has_value();
}

inline XPath theta(const KGraph& g, const SemigroupElement& f, const XPath& x) {
  auto p = in_domain(g, x, f);
  if (!p) throw Error(Errc::NotInDomain, format(g, x) + " is not in the domain of " + format(g, f));
  return prepend(g, p->first, shift(g, x, p->second.degree));
}

// Z(lambda \ {lambda nu_1, ..., lambda nu_n}).
struct BasisSet {
  Path lambda;
  std::vector<Path> exclusions;
};

inline bool in_basis(const KGraph& g, const XPath& x, const BasisSet& b) {
  if (!is_initial(g, b.lambda, x)) return false;
  for (auto& nu : b.exclusions)
    if (is_initial(g, g.compose(b.lambda, nu), x)) return false;
  return true;
}

// ---- boundary paths ----

struct BoundaryResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<Degree> position;  // where a finite exhaustive set is missed
};

// x is a boundary path iff no sigma^n x has a finite exhaustive set at its
// range avoiding all of its initial segments. Such a set exists iff
// C = { lambda in r(y)Lambda : lambda not initial in y } is exhaustive, and
// for finite y the part of C with degree <= d(y)+1 already decides it. For
// infinite x the search is sound; it is exact when every coordinate is
// infinite or the component has only one color, and Unknown otherwise.
inline BoundaryResult check_boundary(const KGraph& g, const XPath& x) {
  if (x.degree().all_infinite()) return {Verdict::Holds, std::nullopt};
  Degree one = Degree::filled(g.rank(), 1);
  for (auto& n : box(x.period_box())) {
    XPath y = shift(g, x, n);
    std::vector<Path> avoid;
    for (auto& l : paths_with_range(g, y.range(), y.period_box() + one))
      if (!is_initial(g, l, y)) avoid.push_back(std::move(l));
    if (!avoid.empty() && is_exhaustive(g, y.range(), avoid)) return {Verdict::Fails, n};
  }
  if (x.is_finite() || g.component_kind(x.range()) != ComponentKind::General)
    return {Verdict::Holds, std::nullopt};
  return {Verdict::Unknown, std::nullopt};
}

inline Verdict is_boundary(const KGraph& g, const XPath& x) { return check_boundary(g, x).verdict; }

// Finite paths straight from the definition, against every minimal finite
// exhaustive set. Needs an acyclic component.
inline bool is_boundary_by_definition(const KGraph& g, const Path& x) {
  for (auto& n : box(x.degree)) {
    Path y = g.segment(x, n, x.degree);
    for (auto& e : fe_sets(g, y.range)) {
      bool hit = false;
      for (auto& l : e) hit = hit || g.is_prefix(l, y);
      if (!hit) return false;
    }
  }
  return true;
}

struct BoundarySet {
  std::vector<XPath> paths;
  bool complete = false;   // no other boundary path has range v
  std::size_t undecided = 0;
};

// In a single-colored component where every vertex on a cycle receives
// exactly one edge, every infinite path from v is p.c^inf with |p|, |c| at
// most |V|, so the search below sees all of v(boundary).
inline bool boundary_certificate(const KGraph& g, VertexId v) {
  if (g.component_kind(v) == ComponentKind::Acyclic) return true;
  if (g.component_kind(v) != ComponentKind::SingleColor) return false;
  for (auto u : g.vertices())
    if (g.component(u) == g.component(v) && g.on_cycle(u) && g.in_degree(u) != 1) return false;
  return true;
}

inline BoundarySet boundary_paths(const KGraph& g, VertexId v,
                                  std::optional<std::uint32_t> cap = std::nullopt) {
  BoundarySet out;
  auto add = [&](XPath x) {
    for (auto& y : out.paths)
      if (xpath_eq(g, x, y)) return;
    switch (is_boundary(g, x)) {
      case Verdict::Holds: out.paths.push_back(std::move(x)); break;
      case Verdict::Unknown: ++out.undecided; break;
      case Verdict::Fails: break;
    }
  };
  if (g.component_acyclic(v)) {
    for (auto& l : paths_with_range(g, v)) add(XPath::finite(l));
    out.complete = true;
    return out;
  }
  Degree b = Degree::filled(g.rank(), cap.value_or(static_cast<std::uint32_t>(g.vertex_count())));
  auto prefixes = paths_with_range(g, v, b);
  for (auto& p : prefixes) add(XPath::finite(p));
  for (auto& p : prefixes)
    for (auto& c : cycles_at(g, p.source, b)) add(XPath::periodic(g, p, c));
  out.complete = out.undecided == 0 && boundary_certificate(g, v);
  return out;
}

// ---- building a boundary path from a vertex ----

struct Extension {
  XPath path;
  std::size_t steps = 0;      // lambda_n produced
  std::size_t satisfied = 0;  // (a, b) pairs processed against a listed set
  bool periodic_closure = false;
};

namespace detail {

// A boundary path rho.c^inf read off the finite path p, preferring short
// cycles; c must occur at least twice in a row inside p.
inline std::optional<XPath> periodic_closure(const KGraph& g, const Path& p) {
  auto degs = box(p.degree);
  std::stable_sort(degs.begin(), degs.end(),
                   [](const Degree& a, const Degree& b) { return a.total() < b.total(); });
  for (auto& q : degs) {
    if (q.is_zero()) continue;
    for (auto& m : degs) {
      if (!(m + q + q).le(p.degree)) continue;
      Path c = g.segment(p, m, m + q);
      if (c.range != c.source || g.segment(p, m + q, m + q + q) != c) continue;
      XPath x = XPath::periodic(g, g.segment(p, Degree(g.rank()), m), c);
      if (is_boundary(g, x) == Verdict::Holds) return x;
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Walks the diagonal (1,1), (1,2), (2,1), (1,3), ... of pairs (a, b): at
// step n, lambda_n is the first element of Ext(lambda_a...lambda_{n-1};
// E_{a,b}), E_{a,b} the b-th listed minimal finite exhaustive set at
// r(lambda_a), or a vertex if there are fewer. In an acyclic component the
// listing is complete and the walk stops once every listed set at every
// index up to one past the last nontrivial lambda has been processed. In a
// cyclic component the sets have degree <= (1,...,1) and the walk stops at
// the first periodic closure that is a boundary path.
inline Extension extend_to_boundary(const KGraph& g, VertexId v, std::size_t budget = 2000) {
  bool acyclic = g.component_acyclic(v);
  std::optional<Degree> cap;
  if (!acyclic) cap = Degree::filled(g.rank(), 1);
  std::vector<Path> lambdas;
  std::vector<std::vector<std::vector<Path>>> listing;
  std::vector<std::size_t> done;  // done[a]: pairs (a, 1..done[a]) processed
  auto listed = [&](std::size_t a) -> const std::vector<std::vector<Path>>& {
    while (listing.size() <= a) {
      VertexId r = listing.empty() ? v : lambdas[listing.size() - 1].source;
      listing.push_back(fe_sets(g, r, cap));
      done.push_back(0);
    }
    return listing[a];
  };
  Extension out{XPath::finite(g.vertex(v))};
  auto whole = [&](std::size_t from) {
    Path p = g.vertex(from == 0 ? v : lambdas[from - 1].source);
    for (std::size_t i = from; i < lambdas.size(); ++i) p = g.compose(p, lambdas[i]);
    return p;
  };
  auto finished = [&] {
    std::size_t last = 0;
    for (std::size_t i = 0; i < lambdas.size(); ++i)
      if (!lambdas[i].is_vertex()) last = i + 1;
    for (std::size_t a = 0; a <= last; ++a)
      if (done[a] < listed(a).size()) return false;
    return true;
  };

  std::size_t since_check = 0;
  Degree checked(g.rank());
  for (std::size_t diag = 2;; ++diag) {
    for (std::size_t a = 1; a < diag; ++a) {
      std::size_t b = diag - a;  // 1-based pair (a, b)
      if (a > lambdas.size() + 1) break;
      if (lambdas.size() >= budget)
        throw Error(Errc::BudgetExhausted, "no boundary path after " + std::to_string(budget) +
                                               " steps from " + g.vertex_name(v));
      const auto& sets = listed(a - 1);
      Path tail = g.vertex(a - 1 == 0 ? v : lambdas[a - 2].source);
      for (std::size_t i = a - 1; i < lambdas.size(); ++i) tail = g.compose(tail, lambdas[i]);
      Path next = g.vertex(tail.source);
      if (b <= sets.size()) {
        next = ext(g, tail, sets[b - 1]).front();
        ++out.satisfied;
      }
      done[a - 1] = std::max(done[a - 1], b);
      lambdas.push_back(next);
      ++out.steps;
      if (acyclic) {
        if (finished()) {
          out.path = XPath::finite(whole(0));
          if (is_boundary(g, out.path) != Verdict::Holds)
            throw Error(Errc::BudgetExhausted, "walk ended off the boundary at " + format(g, out.path));
          return out;
        }
      } else if (++since_check >= 8) {
        since_check = 0;
        Path p = whole(0);
        if (is_boundary(g, XPath::finite(p)) == Verdict::Holds) {
          out.path = XPath::finite(p);
          return out;
        }
        if (p.degree == checked) continue;
        checked = p.degree;
        if (auto x = detail::periodic_closure(g, p)) {
          out.path = *x;
          out.periodic_closure = true;
          return out;
        }
      }
    }
  }
}

// sigma^m and lambda. keep the boundary: every instance found for paths in
// boundary_paths over all vertices, or `trials` random ones of them.
inline Check boundary_closed_under_action(const KGraph& g, std::size_t trials, std::uint64_t seed,
                                          const Degree& cap) {
  Check check{"boundary is invariant under shifts and prepending"};
  std::vector<std::pair<std::string, XPath>> cases;
  for (auto v : g.vertices()) {
    auto bs = boundary_paths(g, v);
    for (auto& x : bs.paths) {
      for (auto& m : box(x.period_box()))
        cases.emplace_back("shift " + m.str() + " of " + format(g, x), shift(g, x, m));
      for (auto& l : paths_with_source(g, v, cap))
        if (!l.is_vertex())
          cases.emplace_back(g.format(l) + " times " + format(g, x), prepend(g, l, x));
    }
  }
  auto run = [&](const std::pair<std::string, XPath>& c) {
    ++check.instances;
    auto verdict = is_boundary(g, c.second);
    if (verdict == Verdict::Fails) check.fail(c.first);
    if (verdict == Verdict::Unknown) ++check.unknown;
  };
  if (trials == 0 || trials >= cases.size()) {
    for (auto& c : cases) run(c);
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < trials; ++t) run(cases[rng() % cases.size()]);
  }
  return check;
}

// x in Lambda^{<= inf}: whenever d(x)_i < inf, no vertex x(n) with n_i = d(x)_i
// receives an edge of color i. For finite x that is s(x). For p.c^inf with
// one infinite coordinate the vertices x(n) on that face run through the
// cycle; with several infinite coordinates the face is searched over a few
// unrollings, so only a violation is conclusive.
inline Verdict in_le_infty(const KGraph& g, const XPath& x) {
  auto deg = x.degree();
  if (x.is_finite()) {
    for (std::size_t c = 0; c < g.rank(); ++c)
      if (!g.edges_into(x.prefix().source, c).empty()) return Verdict::Fails;
    return Verdict::Holds;
  }
  std::vector<std::size_t> finite;
  std::size_t infinite = 0;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    if (deg.infinite(i))
      ++infinite;
    else
      finite.push_back(i);
  }
  if (finite.empty()) return Verdict::Holds;
  std::uint32_t reps = infinite == 1 ? 1 : static_cast<std::uint32_t>(g.vertex_count()) + 1;
  Path p = unroll(g, x, x.prefix().degree + x.cycle().degree * reps);
  for (auto& n : box(p.degree)) {
    bool on_face = true;
    for (auto c : finite) on_face = on_face && n[c] == p.degree[c];
    if (!on_face) continue;
    VertexId u = g.segment(p, Degree(g.rank()), n).source;
    for (auto c : finite)
      if (!g.edges_into(u, c).empty()) return Verdict::Fails;
  }
  return infinite == 1 ? Verdict::Holds : Verdict::Unknown;
}

}  // namespace kgraph

#endif
