#ifndef KGRAPH_SEMIGROUP_HPP
#define KGRAPH_SEMIGROUP_HPP

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "alignment.hpp"

namespace kgraph {

// (lambda, mu) and (nu, omega) may share an element iff both
// Lambda^min(lambda, nu) and Lambda^min(mu, omega) are empty.
inline bool orthogonal(const KGraph& g, const PathPair& a, const PathPair& b) {
  return !have_common_extension(g, a.first, b.first) &&
         !have_common_extension(g, a.second, b.second);
}

// A finite pairwise orthogonal set of source-matched pairs; empty is zero.
class SemigroupElement {
 public:
  SemigroupElement() = default;

  static SemigroupElement make(const KGraph& g, std::vector<PathPair> pairs) {
    auto f = unchecked(std::move(pairs));
    for (auto& p : f.pairs_)
      if (p.first.source != p.second.source)
        throw Error(Errc::NotOrthogonal, format(g, p) + " has mismatched sources");
    for (std::size_t i = 0; i < f.pairs_.size(); ++i)
      for (std::size_t j = i + 1; j < f.pairs_.size(); ++j)
        if (!orthogonal(g, f.pairs_[i], f.pairs_[j]))
          throw Error(Errc::NotOrthogonal,
                      format(g, f.pairs_[i]) + " and " + format(g, f.pairs_[j]));
    return f;
  }

  // For pairs already known to satisfy the invariant.
  static SemigroupElement unchecked(std::vector<PathPair> pairs) {
    SemigroupElement f;
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    f.pairs_ = std::move(pairs);
    return f;
  }

  static SemigroupElement singleton(const KGraph& g, const Path& l, const Path& m) {
    return make(g, {PathPair{l, m}});
  }

  const std::vector<PathPair>& pairs() const { return pairs_; }
  bool empty() const { return pairs_.empty(); }
  std::size_t size() const { return pairs_.size(); }

  friend bool operator==(const SemigroupElement&, const SemigroupElement&) = default;
  friend auto operator<=>(const SemigroupElement&, const SemigroupElement&) = default;

 private:
  std::vector<PathPair> pairs_;
};

inline bool satisfies_invariant(const KGraph& g, const SemigroupElement& f) {
  const auto& ps = f.pairs();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps[i].first.source != ps[i].second.source) return false;
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      if (!orthogonal(g, ps[i], ps[j])) return false;
  }
  return true;
}

inline std::string format(const KGraph& g, const SemigroupElement& f) {
  std::string s = "{";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) s += ", ";
    s += format(g, f.pairs()[i]);
  }
  return s + "}";
}

inline SemigroupElement sgp_product(const KGraph& g, const SemigroupElement& f,
                                    const SemigroupElement& h) {
  std::vector<PathPair> out;
  for (auto& [lambda, mu] : f.pairs())
    for (auto& [xi, eta] : h.pairs())
      for (auto& [alpha, beta] : lambda_min(g, mu, xi))
        out.push_back({g.compose(lambda, alpha), g.compose(eta, beta)});
  return SemigroupElement::unchecked(std::move(out));
}

inline SemigroupElement sgp_star(const SemigroupElement& f) {
  std::vector<PathPair> out;
  for (auto& [l, m] : f.pairs()) out.push_back({m, l});
  return SemigroupElement::unchecked(std::move(out));
}

// F*F.
inline SemigroupElement sgp_idempotents_of(const KGraph& g, const SemigroupElement& f) {
  return sgp_product(g, sgp_star(f), f);
}

inline bool is_idempotent(const KGraph& g, const SemigroupElement& f) {
  return sgp_product(g, f, f) == f;
}

// Every source-matched pair with both degrees <= cap.
inline std::vector<PathPair> pair_pool(const KGraph& g, const Degree& cap) {
  std::vector<PathPair> pool;
  for (auto v : g.vertices()) {
    auto into = paths_with_source(g, v, cap);
    for (auto& a : into)
      for (auto& b : into) pool.push_back({a, b});
  }
  return pool;
}

// Draws up to max_size pairs from the pool, dropping any that break
// orthogonality with those already taken.
inline SemigroupElement random_element(const KGraph& g, const std::vector<PathPair>& pool,
                                       std::mt19937_64& rng, std::size_t max_size = 4) {
  std::size_t want = rng() % (max_size + 1);
  std::vector<PathPair> taken;
  for (std::size_t i = 0; i < want && !pool.empty(); ++i) {
    const auto& p = pool[rng() % pool.size()];
    bool ok = true;
    for (auto& q : taken) ok = ok && !(p == q) && orthogonal(g, p, q);
    if (ok) taken.push_back(p);
  }
  return SemigroupElement::unchecked(std::move(taken));
}

struct SemigroupReport {
  std::size_t samples = 0;
  std::size_t closure = 0;
  std::vector<Check> checks;
  bool passed() const {
    for (auto& c : checks)
      if (!c.passed()) return false;
    return true;
  }
};

// Axioms of an inverse semigroup with involution on `samples` random
// elements. Inverse uniqueness is only searched inside the sampled closure
// (samples, their stars, consecutive products and idempotents F*F).
inline SemigroupReport verify_inverse_semigroup(const KGraph& g, std::size_t samples,
                                                std::uint64_t seed, const Degree& cap) {
  SemigroupReport rep;
  rep.samples = samples;
  std::mt19937_64 rng(seed);
  auto pool = pair_pool(g, cap);
  std::vector<SemigroupElement> xs;
  for (std::size_t i = 0; i < samples; ++i) xs.push_back(random_element(g, pool, rng));

  Check invariant{"products are pairwise orthogonal"};
  auto mul = [&](const SemigroupElement& a, const SemigroupElement& b) {
    auto c = sgp_product(g, a, b);
    ++invariant.instances;
    if (!satisfies_invariant(g, c))
      invariant.fail(format(g, a) + " * " + format(g, b) + " = " + format(g, c));
    return c;
  };

  Check assoc{"(FG)H = F(GH)"}, zero{"0 is a two-sided zero"};
  Check regular{"FF*F = F"}, coregular{"F*FF* = F*"}, involution{"(FG)* = G*F*, F** = F"};
  Check idem{"idempotents commute"}, unique{"inverse unique in sampled closure"};
  for (std::size_t i = 0; i < samples; ++i) {
    const auto& f = xs[i];
    const auto& h = xs[(i + 1) % samples];
    const auto& k = xs[(i + 2) % samples];
    ++assoc.instances;
    if (mul(mul(f, h), k) != mul(f, mul(h, k)))
      assoc.fail(format(g, f) + " " + format(g, h) + " " + format(g, k));
    ++zero.instances;
    if (!mul(f, {}).empty() || !mul({}, f).empty()) zero.fail(format(g, f));
    auto fs = sgp_star(f);
    ++regular.instances;
    if (mul(mul(f, fs), f) != f) regular.fail(format(g, f));
    ++coregular.instances;
    if (mul(mul(fs, f), fs) != fs) coregular.fail(format(g, f));
    ++involution.instances;
    if (sgp_star(mul(f, h)) != mul(sgp_star(h), fs) || sgp_star(fs) != f)
      involution.fail(format(g, f) + " " + format(g, h));
    auto p = mul(fs, f), q = mul(sgp_star(h), h);
    ++idem.instances;
    if (mul(p, q) != mul(q, p) || mul(p, p) != p) idem.fail(format(g, p) + " " + format(g, q));
  }

  std::vector<SemigroupElement> closure = xs;
  for (std::size_t i = 0; i < samples; ++i) {
    closure.push_back(sgp_star(xs[i]));
    closure.push_back(mul(xs[i], xs[(i + 1) % samples]));
    closure.push_back(mul(sgp_star(xs[i]), xs[i]));
  }
  std::sort(closure.begin(), closure.end());
  closure.erase(std::unique(closure.begin(), closure.end()), closure.end());
  rep.closure = closure.size();
  for (auto& f : xs) {
    auto fs = sgp_star(f);
    for (auto& h : closure) {
      auto fh = sgp_product(g, f, h);
      if (!f.empty() && fh.empty()) continue;  // then FHF = 0 != F
      ++unique.instances;
      if (sgp_product(g, fh, f) == f && sgp_product(g, sgp_product(g, h, f), h) == h && h != fs)
        unique.fail(format(g, f) + " has a second inverse " + format(g, h));
    }
  }
  rep.checks = {invariant, assoc, zero, regular, coregular, involution, idem, unique};
  return rep;
}

}  // namespace kgraph

#endif
