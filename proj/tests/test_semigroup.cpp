#include <gtest/gtest.h>

#include <kgraph/builtin.hpp>
#include <kgraph/semigroup.hpp>

using namespace kgraph;

namespace {

KGraph omega(std::size_t k, Degree m) { return build(builtin::omega(k, m)); }

SemigroupElement single(const KGraph& g, const char* l, const char* m) {
  return SemigroupElement::singleton(g, g.parse_path(l), g.parse_path(m));
}

}  // namespace

TEST(Semigroup, StarOfSingleton) {
  auto g = omega(2, {1, 1});
  auto f = single(g, "c2_1_0", "c2_0_0.c1_0_1");
  EXPECT_EQ(sgp_star(f), single(g, "c2_0_0.c1_0_1", "c2_1_0"));
  EXPECT_EQ(sgp_star(sgp_star(f)), f);
}

TEST(Semigroup, IdempotentOfSingleton) {
  auto g = build(builtin::paper_ex2(2));
  auto f = single(g, "lambda.zeta", "delta");
  EXPECT_EQ(sgp_idempotents_of(g, f), single(g, "delta", "delta"));
  EXPECT_TRUE(is_idempotent(g, sgp_idempotents_of(g, f)));
}

TEST(Semigroup, ZeroAndMismatchedSources) {
  auto g = omega(2, {1, 1});
  auto f = single(g, "@v0_0", "@v0_0");
  auto h = single(g, "@v1_1", "@v1_1");
  EXPECT_TRUE(sgp_product(g, f, h).empty());
  EXPECT_THROW(single(g, "c1_0_0", "c2_0_0"), Error);
}

TEST(Semigroup, NonOrthogonalRejected) {
  auto g = omega(2, {1, 1});
  auto a = g.parse_path("c1_0_0"), b = g.parse_path("c1_0_0.c2_1_0");
  try {
    SemigroupElement::make(g, {{a, a}, {b, b}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotOrthogonal);
  }
}

// The product of singletons against the defining formula, computed from
// paths of the join degree directly.
TEST(Semigroup, SingletonProductMatchesFormula) {
  auto g = omega(2, {2, 1});
  auto pool = pair_pool(g, Degree{1, 1});
  for (auto& [l, m] : pool)
    for (auto& [x, e] : pool) {
      auto got = sgp_product(g, SemigroupElement::unchecked({{l, m}}), SemigroupElement::unchecked({{x, e}}));
      std::vector<PathPair> want;
      if (m.range == x.range) {
        Degree top = m.degree.join(x.degree);
        for (auto& a : paths_of_degree(g, m.source, top - m.degree))
          for (auto& b : paths_of_degree(g, x.source, top - x.degree))
            if (g.compose(m, a) == g.compose(x, b)) want.push_back({g.compose(l, a), g.compose(e, b)});
      }
      EXPECT_EQ(got, SemigroupElement::unchecked(want));
    }
}

TEST(Semigroup, SingletonAssociativityExhaustive) {
  auto g = omega(2, {1, 1});
  auto pool = pair_pool(g, Degree{1, 1});
  std::vector<SemigroupElement> xs;
  for (auto& p : pool) xs.push_back(SemigroupElement::unchecked({p}));
  for (auto& a : xs)
    for (auto& b : xs)
      for (auto& c : xs)
        ASSERT_EQ(sgp_product(g, sgp_product(g, a, b), c), sgp_product(g, a, sgp_product(g, b, c)));
}

TEST(Semigroup, FTimesStarFF) {
  auto g = omega(2, {2, 2});
  auto pool = pair_pool(g, Degree{2, 2});
  std::mt19937_64 rng(0);
  for (int i = 0; i < 200; ++i) {
    auto f = random_element(g, pool, rng);
    ASSERT_TRUE(satisfies_invariant(g, f));
    EXPECT_EQ(sgp_product(g, f, sgp_idempotents_of(g, f)), f) << format(g, f);
  }
}

TEST(Semigroup, AxiomSuite) {
  struct Case {
    KGraph g;
    Degree cap;
  };
  std::vector<Case> cases{{omega(2, {2, 2}), {1, 1}}, {build(builtin::paper_ex2(3)), {2, 1}},
                          {build(builtin::torus()), {1, 1}}, {build(builtin::mixed()), {1, 1}}};
  for (auto& c : cases) {
    auto rep = verify_inverse_semigroup(c.g, 100, 0, c.cap);
    for (auto& ch : rep.checks) {
      EXPECT_TRUE(ch.passed()) << c.g.name() << ": " << ch.name << ": " << ch.failures.front();
      EXPECT_GT(ch.instances, 0u) << ch.name;
    }
  }
}

TEST(Semigroup, DeterministicForSeed) {
  auto g = omega(2, {2, 2});
  auto pool = pair_pool(g, Degree{1, 1});
  std::mt19937_64 a(7), b(7);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(random_element(g, pool, a), random_element(g, pool, b));
}
