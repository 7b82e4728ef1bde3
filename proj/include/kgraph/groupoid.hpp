#ifndef KGRAPH_GROUPOID_HPP
#define KGRAPH_GROUPOID_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "pathspace.hpp"

namespace kgraph {

// [{(lambda, mu)}, x], stored in canonical form.
struct Germ {
  Path lambda;
  Path mu;
  XPath x;
};

using Cocycle = std::vector<std::int64_t>;

inline Cocycle cocycle(const Germ& g) {
  Cocycle c;
  for (std::size_t i = 0; i < g.lambda.degree.rank(); ++i)
    c.push_back(std::int64_t(g.lambda.degree[i]) - std::int64_t(g.mu.degree[i]));
  return c;
}

inline std::string format(const KGraph& g, const Germ& h) {
  return "[(" + g.format(h.lambda) + ", " + g.format(h.mu) + "), " + format(g, h.x) + "]";
}

// r([{(lambda, mu)}, x]) = lambda sigma^{d(mu)} x.
inline XPath germ_range(const KGraph& g, const Germ& h) {
  return prepend(g, h.lambda, shift(g, h.x, h.mu.degree));
}

inline const XPath& germ_source(const Germ& h) { return h.x; }

namespace detail {

// The representative at mu' = x(0, n), if the germ has one there:
// with t = n v d(mu) and P = lambda x(d(mu), t), it is P(0, d(P) - (t - n)),
// provided the rest of P is x(n, t).
inline std::optional<Path> representative_at(const KGraph& g, const Germ& h, const Degree& n) {
  Degree t = n.join(h.mu.degree);
  Path p = g.compose(h.lambda, xsegment(g, h.x, h.mu.degree, t));
  Degree drop = t - n;
  if (!drop.le(p.degree)) return std::nullopt;
  Degree cut = p.degree - drop;
  if (g.segment(p, cut, p.degree) != xsegment(g, h.x, n, t)) return std::nullopt;
  return g.segment(p, Degree(g.rank()), cut);
}

}  // namespace detail

// Smallest |d(mu)|, then lexicographically smallest d(mu). Every candidate
// with |n| <= |d(mu)| lies in the box of side |d(mu)|.
inline Germ canonical(const KGraph& g, Germ h) {
  std::uint32_t side = h.mu.degree.total();
  Degree bound = Degree::filled(g.rank(), side);
  auto dx = h.x.degree();
  for (std::size_t i = 0; i < bound.rank(); ++i)
    if (!dx.infinite(i)) bound[i] = std::min(bound[i], dx.at(i));
  auto cands = box(bound);
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Degree& a, const Degree& b) { return a.total() < b.total(); });
  for (auto& n : cands) {
    if (n.total() > side) break;
    if (auto l = detail::representative_at(g, h, n)) return Germ{*l, initial(g, h.x, n), h.x};
  }
  return h;
}

inline Germ make_germ(const KGraph& g, const Path& lambda, const Path& mu, const XPath& x) {
  if (lambda.source != mu.source)
    throw Error(Errc::NotComposable, "s(" + g.format(lambda) + ") != s(" + g.format(mu) + ")");
  if (!is_initial(g, mu, x))
    throw Error(Errc::NotInDomain, format(g, x) + " does not start with " + g.format(mu));
  return canonical(g, Germ{lambda, mu, x});
}

inline Germ unit_germ(const KGraph& g, const XPath& x) {
  Path v = g.vertex(x.range());
  return Germ{v, v, x};
}

// [F, x], reduced to the unique pair of F whose mu starts x.
inline Germ germ_of(const KGraph& g, const SemigroupElement& f, const XPath& x) {
  auto p = in_domain(g, x, f);
  if (!p) throw Error(Errc::NotInDomain, format(g, x) + " is not in the domain of " + format(g, f));
  return make_germ(g, p->first, p->second, x);
}

// Same x, and lambda x(d(mu), t) = xi x(d(eta), t) with t = d(mu) v d(eta).
inline bool germ_eq(const KGraph& g, const Germ& a, const Germ& b) {
  if (!xpath_eq(g, a.x, b.x)) return false;
  Degree t = a.mu.degree.join(b.mu.degree);
  return g.compose(a.lambda, xsegment(g, a.x, a.mu.degree, t)) ==
         g.compose(b.lambda, xsegment(g, a.x, b.mu.degree, t));
}

inline bool composable(const KGraph& g, const Germ& a, const Germ& b) {
  return xpath_eq(g, a.x, germ_range(g, b));
}

// [{(lambda, mu)}, x] . [{(xi, eta)}, y] = [{(lambda alpha, eta beta)}, y].
inline Germ germ_compose(const KGraph& g, const Germ& a, const Germ& b) {
  if (!composable(g, a, b))
    throw Error(Errc::NotComposable, "s(" + format(g, a) + ") != r(" + format(g, b) + ")");
  Degree t = a.mu.degree.join(b.lambda.degree);
  Path alpha = xsegment(g, a.x, a.mu.degree, t);
  Path beta = xsegment(g, b.x, b.mu.degree, b.mu.degree + (t - b.lambda.degree));
  return canonical(g, Germ{g.compose(a.lambda, alpha), g.compose(b.mu, beta), b.x});
}

inline Germ germ_inverse(const KGraph& g, const Germ& h) {
  return canonical(g, Germ{h.mu, h.lambda, germ_range(g, h)});
}

inline bool is_unit(const KGraph& g, const Germ& h) {
  return germ_eq(g, h, unit_germ(g, h.x));
}

// Germs up to germ_eq.
class GermSet {
 public:
  bool insert(const KGraph& g, Germ h) {
    if (contains(g, h)) return false;
    germs_.push_back(std::move(h));
    return true;
  }
  bool contains(const KGraph& g, const Germ& h) const {
    for (auto& x : germs_)
      if (germ_eq(g, x, h)) return true;
    return false;
  }
  const std::vector<Germ>& germs() const { return germs_; }
  std::size_t size() const { return germs_.size(); }

 private:
  std::vector<Germ> germs_;
};

inline bool same_set(const KGraph& g, const GermSet& a, const GermSet& b) {
  if (a.size() != b.size()) return false;
  for (auto& h : a.germs())
    if (!b.contains(g, h)) return false;
  return true;
}

// Psi_*(F) over the supplied boundary points.
inline GermSet psi_star(const KGraph& g, const SemigroupElement& f, const std::vector<XPath>& boundary) {
  GermSet out;
  for (auto& x : boundary)
    if (in_DF(g, x, f)) out.insert(g, germ_of(g, f, x));
  return out;
}

inline GermSet germ_product(const KGraph& g, const GermSet& a, const GermSet& b) {
  GermSet out;
  for (auto& p : a.germs())
    for (auto& q : b.germs())
      if (composable(g, p, q)) out.insert(g, germ_compose(g, p, q));
  return out;
}

// Every boundary path of an acyclic graph.
inline std::vector<XPath> all_boundary_paths(const KGraph& g) {
  std::vector<XPath> out;
  for (auto v : g.vertices()) {
    if (!g.component_acyclic(v))
      throw Error(Errc::UnboundedEnumeration, "vertex " + g.vertex_name(v) + " is on a cyclic component");
    for (auto& x : boundary_paths(g, v).paths) out.push_back(x);
  }
  return out;
}

// The whole groupoid over the boundary of an acyclic graph: for each
// boundary x, each mu = x(0, n) and each lambda with s(lambda) = s(mu).
inline std::vector<Germ> germ_table(const KGraph& g) {
  std::vector<Germ> out;
  std::map<std::tuple<Path, Path, Path>, bool> seen;
  for (auto& x : all_boundary_paths(g)) {
    for (auto& n : box(x.prefix().degree)) {
      Path mu = initial(g, x, n);
      for (auto& l : paths_with_source(g, mu.source)) {
        Germ h = make_germ(g, l, mu, x);
        if (seen.emplace(std::tuple{h.x.prefix(), h.lambda, h.mu}, true).second)
          out.push_back(std::move(h));
      }
    }
  }
  return out;
}

struct GroupoidReport {
  std::size_t germs = 0;
  std::size_t units = 0;
  std::vector<Check> checks;
  bool passed() const {
    for (auto& c : checks)
      if (!c.passed()) return false;
    return true;
  }
};

// Groupoid laws over the full germ table of an acyclic graph.
inline GroupoidReport verify_groupoid(const KGraph& g) {
  GroupoidReport rep;
  auto table = germ_table(g);
  rep.germs = table.size();
  std::size_t n = table.size();
  // after[i]: the j with (table[i], table[j]) composable.
  std::vector<std::vector<std::size_t>> after(n);
  std::vector<XPath> ranges;
  for (auto& h : table) ranges.push_back(germ_range(g, h));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (xpath_eq(g, table[i].x, ranges[j])) after[i].push_back(j);

  Check assoc{"(ab)c = a(bc)"}, ends{"r(ab) = r(a), s(ab) = s(b)"}, units{"unit laws"};
  Check inv{"a a^-1 and a^-1 a are units, (a^-1)^-1 = a"}, cocy{"c(ab) = c(a) + c(b)"};
  Check eqrel{"germ_eq is an equivalence relation"}, wd{"c is constant on germ classes"};
  for (std::size_t i = 0; i < n; ++i) {
    const Germ& a = table[i];
    if (is_unit(g, a)) ++rep.units;
    ++units.instances;
    if (!germ_eq(g, germ_compose(g, unit_germ(g, ranges[i]), a), a) ||
        !germ_eq(g, germ_compose(g, a, unit_germ(g, a.x)), a))
      units.fail(format(g, a));
    ++inv.instances;
    Germ ai = germ_inverse(g, a);
    if (!is_unit(g, germ_compose(g, a, ai)) || !is_unit(g, germ_compose(g, ai, a)) ||
        !germ_eq(g, germ_inverse(g, ai), a) || !xpath_eq(g, germ_range(g, germ_compose(g, a, ai)), ranges[i]))
      inv.fail(format(g, a));
    for (auto j : after[i]) {
      const Germ& b = table[j];
      Germ ab = germ_compose(g, a, b);
      ++ends.instances;
      if (!xpath_eq(g, germ_range(g, ab), ranges[i]) || !xpath_eq(g, ab.x, b.x))
        ends.fail(format(g, a) + " . " + format(g, b));
      ++cocy.instances;
      Cocycle ca = cocycle(a), cb = cocycle(b), cab = cocycle(ab);
      for (std::size_t c = 0; c < ca.size(); ++c)
        if (cab[c] != ca[c] + cb[c]) {
          cocy.fail(format(g, a) + " . " + format(g, b));
          break;
        }
      for (auto l : after[j]) {
        const Germ& c = table[l];
        ++assoc.instances;
        if (!germ_eq(g, germ_compose(g, ab, c), germ_compose(g, a, germ_compose(g, b, c))))
          assoc.fail(format(g, a) + " . " + format(g, b) + " . " + format(g, c));
      }
    }
    // Non-canonical representatives (lambda alpha, mu alpha) of the same
    // germ: equal to it, to each other, and with the same cocycle.
    std::vector<Germ> reps{a};
    Path rest = xsegment(g, a.x, a.mu.degree, a.x.prefix().degree);
    for (auto& m : box(rest.degree)) {
      if (m.is_zero()) continue;
      Path alpha = g.segment(rest, Degree(g.rank()), m);
      reps.push_back(Germ{g.compose(a.lambda, alpha), g.compose(a.mu, alpha), a.x});
    }
    for (auto& p : reps)
      for (auto& q : reps) {
        ++eqrel.instances;
        if (!germ_eq(g, p, q) || !germ_eq(g, q, p)) eqrel.fail(format(g, p) + " vs " + format(g, q));
        ++wd.instances;
        if (cocycle(p) != cocycle(q)) wd.fail(format(g, p) + " vs " + format(g, q));
      }
    ++eqrel.instances;
    if (!germ_eq(g, canonical(g, reps.back()), a)) eqrel.fail("canonical form of " + format(g, reps.back()));
  }
  // Distinct table entries must be inequivalent.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      ++eqrel.instances;
      if (germ_eq(g, table[i], table[j])) eqrel.fail(format(g, table[i]) + " == " + format(g, table[j]));
    }
  rep.checks = {assoc, ends, units, inv, cocy, eqrel, wd};
  return rep;
}

// Psi_*(F) Psi_*(G) = Psi_*(FG) over every pair of singletons with degrees
// <= cap plus `samples` random pairs of larger elements; Psi separating
// distinct F != G at a finite x; and Psi_*({(v,v)}) as the union of
// Psi_*({(lambda,lambda)}) over lambda in each minimal finite exhaustive E.
inline std::vector<Check> verify_psi(const KGraph& g, std::size_t samples, std::uint64_t seed,
                                     const Degree& cap) {
  auto boundary = all_boundary_paths(g);
  auto pool = pair_pool(g, cap);
  std::mt19937_64 rng(seed);
  Check hom{"Psi_*(F) Psi_*(G) = Psi_*(FG)"}, inj{"Psi separates distinct F, G"};
  Check cover{"Psi_*({(v,v)}) = union over E of Psi_*({(lambda,lambda)})"};
  auto run = [&](const SemigroupElement& f, const SemigroupElement& h, const GermSet& pf,
                 const GermSet& ph) {
    ++hom.instances;
    if (!same_set(g, germ_product(g, pf, ph), psi_star(g, sgp_product(g, f, h), boundary)))
      hom.fail(format(g, f) + " " + format(g, h));
    if (f == h) return;
    ++inj.instances;
    for (const auto* e : {&f, &h})
      for (auto& p : e->pairs()) {
        XPath x = XPath::finite(p.second);
        bool in_f = in_DF(g, x, f), in_h = in_DF(g, x, h);
        if (in_f != in_h || (in_f && !germ_eq(g, germ_of(g, f, x), germ_of(g, h, x)))) return;
      }
    inj.fail(format(g, f) + " vs " + format(g, h));
  };
  std::vector<SemigroupElement> singles;
  std::vector<GermSet> images;
  for (auto& p : pool) {
    singles.push_back(SemigroupElement::unchecked({p}));
    images.push_back(psi_star(g, singles.back(), boundary));
  }
  for (std::size_t i = 0; i < singles.size(); ++i)
    for (std::size_t j = 0; j < singles.size(); ++j) run(singles[i], singles[j], images[i], images[j]);
  for (std::size_t t = 0; t < samples; ++t) {
    auto f = random_element(g, pool, rng), h = random_element(g, pool, rng);
    run(f, h, psi_star(g, f, boundary), psi_star(g, h, boundary));
  }
  for (auto v : g.vertices()) {
    Path pv = g.vertex(v);
    auto whole = psi_star(g, SemigroupElement::unchecked({{pv, pv}}), boundary);
    for (auto& e : fe_sets(g, v)) {
      GermSet parts;
      for (auto& l : e) {
        auto one = psi_star(g, SemigroupElement::unchecked({{l, l}}), boundary);
        for (auto& h : one.germs()) parts.insert(g, h);
      }
      ++cover.instances;
      if (!same_set(g, whole, parts)) {
        std::string s = "v=" + g.vertex_name(v) + " E={";
        for (auto& l : e) s += g.format(l) + " ";
        cover.fail(s + "}");
      }
    }
  }
  return {hom, inj, cover};
}

// ---- isotropy and the aperiodicity conditions ----

// sigma^m x = sigma^n x forces m = n. A finite x has d(sigma^m x) = d(x) - m;
// p.c^inf always has sigma^{d(p)} x = sigma^{d(p)+d(c)} x.
inline bool isotropy_trivial(const XPath& x) { return x.is_finite(); }

// Brute-force version over the periodicity-reduced box, for tests.
inline bool isotropy_trivial_by_search(const KGraph& g, const XPath& x) {
  auto b = x.period_box();
  if (!x.is_finite()) b = b + x.cycle().degree;
  auto pts = box(b);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!x.degree().contains(pts[i])) continue;
    XPath a = shift(g, x, pts[i]);
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (x.degree().contains(pts[j]) && xpath_eq(g, a, shift(g, x, pts[j]))) return false;
  }
  return true;
}

struct VertexVerdict {
  VertexId vertex;
  Verdict verdict = Verdict::Unknown;
  std::optional<XPath> witness;
  std::string note;
};

struct ConditionReport {
  std::string condition;
  Verdict verdict = Verdict::Holds;
  std::vector<VertexVerdict> vertices;
};

// (A): every v has a boundary path with trivial isotropy.
inline ConditionReport check_condition_A(const KGraph& g) {
  ConditionReport rep{"A"};
  for (auto v : g.vertices()) {
    VertexVerdict vv{v};
    auto bs = boundary_paths(g, v);
    for (auto& x : bs.paths)
      if (isotropy_trivial(x)) {
        vv.verdict = Verdict::Holds;
        vv.witness = x;
        break;
      }
    if (!vv.witness) {
      vv.verdict = bs.complete ? Verdict::Fails : Verdict::Unknown;
      vv.note = bs.complete ? "every boundary path is periodic"
                            : "no aperiodic boundary path among those searched";
      if (bs.complete && !bs.paths.empty()) vv.witness = bs.paths.front();
    }
    rep.verdict = combine(rep.verdict, vv.verdict);
    rep.vertices.push_back(std::move(vv));
  }
  return rep;
}

namespace detail {

// lambda != mu in Lambda v with lambda x = mu x, degrees <= cap.
inline std::optional<std::pair<Path, Path>> collision(const KGraph& g, const XPath& x) {
  if (x.is_finite()) return std::nullopt;
  auto cands = paths_with_source(g, x.range(), x.prefix().degree + x.cycle().degree);
  std::vector<XPath> images;
  for (auto& l : cands) images.push_back(prepend(g, l, x));
  for (std::size_t i = 0; i < cands.size(); ++i)
    for (std::size_t j = i + 1; j < cands.size(); ++j)
      if (xpath_eq(g, images[i], images[j])) return std::pair{cands[i], cands[j]};
  return std::nullopt;
}

// Candidates in v Lambda^{<= inf}: finite paths and p.c^inf with caps |V|.
inline std::vector<XPath> le_infty_candidates(const KGraph& g, VertexId v, std::size_t& undecided) {
  std::vector<XPath> out;
  auto keep = [&](XPath x) {
    for (auto& y : out)
      if (xpath_eq(g, x, y)) return;
    auto r = in_le_infty(g, x);
    if (r == Verdict::Holds) out.push_back(std::move(x));
    if (r == Verdict::Unknown) ++undecided;
  };
  if (g.component_acyclic(v)) {
    for (auto& p : paths_with_range(g, v)) keep(XPath::finite(p));
    return out;
  }
  Degree b = Degree::filled(g.rank(), static_cast<std::uint32_t>(g.vertex_count()));
  auto prefixes = paths_with_range(g, v, b);
  for (auto& p : prefixes) keep(XPath::finite(p));
  for (auto& p : prefixes)
    for (auto& c : cycles_at(g, p.source, b)) keep(XPath::periodic(g, p, c));
  return out;
}

}  // namespace detail

// (B) over v Lambda^{<= inf}, (B') over v(boundary): some x at v with
// lambda x != mu x for all lambda != mu in Lambda v. Finite x never
// collides. For p.c^inf the pairs are searched up to d(p) + d(c), which
// covers every collision when the component has one color.
inline ConditionReport check_condition_B(const KGraph& g, bool prime) {
  ConditionReport rep{prime ? "Bprime" : "B"};
  for (auto v : g.vertices()) {
    VertexVerdict vv{v};
    std::vector<XPath> cands;
    bool complete;
    if (prime) {
      auto bs = boundary_paths(g, v);
      cands = std::move(bs.paths);
      complete = bs.complete;
    } else {
      std::size_t undecided = 0;
      cands = detail::le_infty_candidates(g, v, undecided);
      complete = undecided == 0 && boundary_certificate(g, v);
    }
    bool exact = g.component_kind(v) != ComponentKind::General;
    bool unsure = false;
    std::optional<std::pair<XPath, std::pair<Path, Path>>> first_hit;
    for (auto& x : cands) {
      auto hit = detail::collision(g, x);
      if (!hit && (x.is_finite() || exact)) {
        vv.verdict = Verdict::Holds;
        vv.witness = x;
        break;
      }
      if (!hit) unsure = true;
      if (hit && !first_hit) first_hit.emplace(x, *hit);
    }
    if (!vv.witness) {
      vv.verdict = complete && !unsure ? Verdict::Fails : Verdict::Unknown;
      vv.note = vv.verdict == Verdict::Fails ? "every candidate x has lambda x = mu x for some lambda != mu"
                                             : "search inconclusive";
      if (vv.verdict == Verdict::Fails && first_hit) {
        vv.witness = first_hit->first;
        vv.note += "; e.g. lambda=" + g.format(first_hit->second.first) +
                   ", mu=" + g.format(first_hit->second.second);
      }
    }
    rep.verdict = combine(rep.verdict, vv.verdict);
    rep.vertices.push_back(std::move(vv));
  }
  return rep;
}

// When every v(boundary) is known completely, the boundary is finite and
// discrete, so essential freeness means every unit has trivial isotropy.
struct EssentialFreeness {
  Verdict verdict = Verdict::Holds;
  std::vector<VertexVerdict> vertices;  // Fails at v: v(boundary) has periodic points
  Verdict condition_a = Verdict::Unknown;
  bool agrees = true;  // with (A), wherever both are decided
};

inline EssentialFreeness essential_freeness_report(const KGraph& g) {
  EssentialFreeness rep;
  for (auto v : g.vertices()) {
    VertexVerdict vv{v};
    auto bs = boundary_paths(g, v);
    if (!bs.complete) {
      vv.verdict = Verdict::Unknown;
      vv.note = "boundary not known to be finite";
    } else {
      vv.verdict = Verdict::Holds;
      for (auto& x : bs.paths)
        if (!isotropy_trivial(x)) {
          vv.verdict = Verdict::Fails;
          vv.witness = x;
          vv.note = "unit with nontrivial isotropy";
          break;
        }
    }
    rep.verdict = combine(rep.verdict, vv.verdict);
    rep.vertices.push_back(std::move(vv));
  }
  rep.condition_a = check_condition_A(g).verdict;
  if (rep.verdict != Verdict::Unknown && rep.condition_a != Verdict::Unknown)
    rep.agrees = rep.verdict == rep.condition_a;
  return rep;
}

}  // namespace kgraph

#endif
