#include <gtest/gtest.h>

#include <set>

#include <kgraph/builtin.hpp>
#include <kgraph/pathspace.hpp>

using namespace kgraph;

namespace {

KGraph omega(std::size_t k, Degree m) { return build(builtin::omega(k, m)); }

KGraph branching_cycle() {
  Presentation p;
  p.name = "branching";
  p.skeleton.k = 1;
  p.skeleton.vertices = {"a", "b"};
  p.skeleton.edges = {{"x", 1, "a", "a"}, {"y", 1, "a", "b"}, {"z", 1, "b", "a"}};
  return build(p);
}

XPath up(const KGraph& g, const char* p, const char* c) {
  return XPath::periodic(g, g.parse_path(p), g.parse_path(c));
}

}  // namespace

TEST(XPath, DegreeAndSegments) {
  auto g = build(builtin::mixed());
  auto x = up(g, "@L", "e");
  EXPECT_EQ(x.degree().str(), "(inf,0)");
  EXPECT_EQ(g.format(xsegment(g, x, Degree{1, 0}, Degree{3, 0})), "e.e");
  EXPECT_THROW(initial(g, x, Degree{0, 1}), Error);
  auto t = build(builtin::torus());
  auto y = up(t, "@v", "e.f");
  EXPECT_EQ(y.degree().str(), "(inf,inf)");
  EXPECT_EQ(initial(t, y, Degree{2, 1}).degree, (Degree{2, 1}));
}

TEST(XPath, EqualityAcrossPresentations) {
  auto g = build(builtin::loop1());
  EXPECT_TRUE(xpath_eq(g, up(g, "@v", "e"), up(g, "e.e", "e.e.e")));
  EXPECT_FALSE(xpath_eq(g, up(g, "@v", "e"), XPath::finite(g.parse_path("e"))));
  auto t = build(builtin::torus());
  EXPECT_TRUE(xpath_eq(t, up(t, "@v", "e.f"), up(t, "f", "f.e")));
  // one path per degree on the torus, so every (inf, inf) path is the same
  EXPECT_TRUE(xpath_eq(t, up(t, "@v", "e.f"), up(t, "@v", "e.e.f")));
  EXPECT_FALSE(xpath_eq(t, up(t, "@v", "e"), up(t, "@v", "f")));
}

TEST(XPath, ShiftAndPrepend) {
  auto g = omega(2, {1, 2});
  auto top = paths_of_degree(g, g.vertex_id("v0_0"), Degree{1, 2}).front();
  auto x = XPath::finite(top);
  for (auto& m : box(top.degree)) {
    auto y = shift(g, x, m);
    EXPECT_EQ(y.prefix(), g.segment(top, m, top.degree));
    EXPECT_TRUE(xpath_eq(g, prepend(g, g.segment(top, Degree{0, 0}, m), y), x));
  }
  auto t = build(builtin::torus());
  auto z = up(t, "@v", "e.f");
  EXPECT_TRUE(xpath_eq(t, shift(t, z, Degree{1, 1}), z));
  EXPECT_TRUE(xpath_eq(t, shift(t, z, Degree{1, 0}), z));
  auto b = branching_cycle();
  auto w = up(b, "y", "z.y");
  EXPECT_FALSE(xpath_eq(b, shift(b, w, Degree{1}), w));
  EXPECT_TRUE(xpath_eq(b, shift(b, w, Degree{1}), up(b, "@b", "z.y")));
  EXPECT_TRUE(xpath_eq(b, shift(b, w, Degree{2}), w));
  EXPECT_TRUE(xpath_eq(t, prepend(t, t.parse_path("e"), z), up(t, "e", "e.f")));
  EXPECT_THROW(shift(g, x, Degree{2, 0}), Error);
}

TEST(XPath, TextRoundTrip) {
  auto t = build(builtin::torus());
  for (auto* s : {"up: e ; e.f", "finite: e.f", "finite: @v"}) EXPECT_EQ(format(t, parse_xpath(t, s)), s);
  EXPECT_EQ(format(t, parse_xpath(t, "f.e")), "finite: e.f");
  EXPECT_THROW(parse_xpath(t, "up: e"), Error);
  EXPECT_THROW(parse_xpath(t, "up: e ; @v"), Error);
}

// theta_F(theta_G(x)) = theta_{FG}(x), with D_{FG} = { x in D_G : theta_G(x) in D_F },
// over finite paths and a few periodic ones.
TEST(Action, ThetaIsAnAction) {
  struct Case {
    KGraph g;
    Degree cap;
    std::vector<XPath> extra;
  };
  auto t = build(builtin::torus());
  auto l = build(builtin::loop1());
  std::vector<Case> cases;
  cases.push_back({omega(2, {2, 2}), {1, 1}, {}});
  cases.push_back({build(builtin::paper_ex2(2)), {2, 1}, {}});
  cases.push_back({t, {1, 1}, {up(t, "@v", "e.f"), up(t, "e", "e"), up(t, "f", "e.f.f")}});
  cases.push_back({l, {2}, {up(l, "@v", "e")}});
  for (auto& c : cases) {
    auto& g = c.g;
    auto pool = pair_pool(g, c.cap);
    std::mt19937_64 rng(0);
    std::vector<XPath> points = c.extra;
    for (auto& p : all_paths(g, c.cap + c.cap)) points.push_back(XPath::finite(p));
    std::size_t hits = 0;
    for (int i = 0; i < 100; ++i) {
      auto f = random_element(g, pool, rng), h = random_element(g, pool, rng);
      auto fh = sgp_product(g, f, h);
      for (auto& x : points) {
        bool chained = in_DF(g, x, h) && in_DF(g, theta(g, h, x), f);
        ASSERT_EQ(chained, in_DF(g, x, fh)) << format(g, f) << format(g, h) << format(g, x);
        if (!chained) continue;
        ++hits;
        EXPECT_TRUE(xpath_eq(g, theta(g, f, theta(g, h, x)), theta(g, fh, x)));
      }
    }
    EXPECT_GT(hits, 0u) << g.name();
  }
}

TEST(Action, ThetaOutsideDomain) {
  auto g = omega(2, {1, 1});
  auto f = SemigroupElement::singleton(g, g.parse_path("c1_0_0"), g.parse_path("c1_0_0"));
  try {
    theta(g, f, XPath::finite(g.parse_path("c2_0_0")));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotInDomain);
  }
}

TEST(Action, BasisSets) {
  auto g = build(builtin::paper_ex2(2));
  BasisSet b{g.parse_path("mu"), {g.parse_path("beta")}};
  EXPECT_TRUE(in_basis(g, XPath::finite(g.parse_path("mu.delta.eta")), b));
  EXPECT_FALSE(in_basis(g, XPath::finite(g.parse_path("mu.beta.tau0")), b));
  EXPECT_FALSE(in_basis(g, XPath::finite(g.parse_path("lambda")), b));
}

TEST(Boundary, MatchesDefinitionOnAcyclicGraphs) {
  for (auto g : {build(builtin::paper_ex2(2)), omega(2, {1, 2}), omega(3, {1, 1, 1}), build(builtin::tail(3))}) {
    std::size_t yes = 0;
    for (auto& p : all_paths(g)) {
      bool want = is_boundary_by_definition(g, p);
      auto r = check_boundary(g, XPath::finite(p));
      EXPECT_EQ(r.verdict, want ? Verdict::Holds : Verdict::Fails) << g.name() << " " << g.format(p);
      yes += want;
    }
    EXPECT_GT(yes, 0u);
  }
}

// Paths whose last edge, read from the source end, is gamma, eta, xi, omega
// or some tau_i are boundary paths; every other path is not.
TEST(Boundary, WorkedExample) {
  for (std::size_t n : {1u, 2u, 3u}) {
    auto g = build(builtin::paper_ex2(n));
    std::set<std::string> named{"gamma", "eta", "xi", "omega"};
    for (std::size_t i = 0; i < n; ++i) named.insert("tau" + std::to_string(i));
    std::size_t claimed = 0;
    for (auto& p : all_paths(g)) {
      bool ends_named = false;
      for (std::size_t c = 0; c < g.rank(); ++c)
        if (p.degree[c] > 0) {
          auto last = g.segment(p, p.degree - Degree::unit(2, c), p.degree);
          ends_named = ends_named || named.count(g.format(last));
        }
      if (ends_named) ++claimed;
      bool source_free = g.in_degree(p.source) == 0;
      EXPECT_EQ(is_boundary(g, XPath::finite(p)) == Verdict::Holds, ends_named || (p.is_vertex() && source_free))
          << g.format(p);
    }
    EXPECT_GT(claimed, 5u);
  }
}

TEST(Boundary, NoSourcesMeansInfinitePaths) {
  auto g = build(builtin::loop1());
  EXPECT_EQ(is_boundary(g, up(g, "@v", "e")), Verdict::Holds);
  EXPECT_EQ(is_boundary(g, XPath::finite(g.parse_path("e.e"))), Verdict::Fails);
  auto b = branching_cycle();
  for (auto& p : all_paths(b, Degree{3})) EXPECT_EQ(is_boundary(b, XPath::finite(p)), Verdict::Fails);
  EXPECT_EQ(is_boundary(b, up(b, "y", "z.y")), Verdict::Holds);
  EXPECT_EQ(is_boundary(b, up(b, "@a", "x")), Verdict::Holds);
}

TEST(Boundary, TorusNeedsBothDirections) {
  auto t = build(builtin::torus());
  EXPECT_EQ(is_boundary(t, up(t, "@v", "e")), Verdict::Fails);
  EXPECT_EQ(is_boundary(t, up(t, "f", "f")), Verdict::Fails);
  EXPECT_EQ(is_boundary(t, up(t, "@v", "e.f")), Verdict::Holds);
  EXPECT_EQ(is_boundary(t, XPath::finite(t.parse_path("e.f"))), Verdict::Fails);
}

TEST(Boundary, SingleColorComponentInHigherRank) {
  auto g = build(builtin::mixed());
  EXPECT_EQ(is_boundary(g, up(g, "@L", "e")), Verdict::Holds);
  auto bs = boundary_paths(g, g.vertex_id("L"));
  EXPECT_TRUE(bs.complete);
  ASSERT_EQ(bs.paths.size(), 1u);
  EXPECT_EQ(format(g, bs.paths[0]), "up: @L ; e");
}

TEST(Boundary, NonemptyEverywhere) {
  for (auto* f : {"omega_2_1_1", "omega_2_1_2", "omega_3_1_1_1", "paper_ex2_2", "paper_ex2_3", "loop1", "mixed",
                  "tail_4", "torus"}) {
    auto g = load_graph(std::string(KGRAPH_DATA) + "/" + f + ".kg");
    for (auto v : g.vertices()) EXPECT_FALSE(boundary_paths(g, v).paths.empty()) << f << " " << g.vertex_name(v);
  }
}

TEST(Boundary, WorkedExampleSetsAtF) {
  auto g = build(builtin::paper_ex2(3));
  auto bs = boundary_paths(g, g.vertex_id("F"));
  std::set<std::string> got;
  for (auto& x : bs.paths) got.insert(g.format(x.prefix()));
  std::set<std::string> want{"delta.eta", "beta.omega", "beta.tau0", "beta.tau1", "beta.tau2"};
  EXPECT_EQ(got, want);
}

TEST(Extension, AcyclicAlwaysBoundary) {
  for (auto g : {build(builtin::paper_ex2(3)), omega(2, {2, 2}), omega(3, {1, 1, 1}), build(builtin::tail(4))})
    for (auto v : g.vertices()) {
      auto e = extend_to_boundary(g, v);
      EXPECT_TRUE(e.path.is_finite());
      EXPECT_EQ(e.path.range(), v);
      EXPECT_TRUE(is_boundary_by_definition(g, e.path.prefix())) << format(g, e.path);
    }
}

TEST(Extension, CyclicClosesPeriodically) {
  for (auto g : {build(builtin::loop1()), build(builtin::torus()), build(builtin::mixed()), branching_cycle()})
    for (auto v : g.vertices()) {
      auto e = extend_to_boundary(g, v);
      EXPECT_EQ(is_boundary(g, e.path), Verdict::Holds) << g.name() << " " << format(g, e.path);
      EXPECT_EQ(e.path.range(), v);
    }
}

TEST(Boundary, ClosedUnderShiftAndPrepend) {
  for (auto g : {build(builtin::paper_ex2(2)), omega(2, {2, 2}), build(builtin::loop1()), build(builtin::mixed()),
                 branching_cycle()}) {
    auto c = boundary_closed_under_action(g, 0, 0, Degree::filled(g.rank(), 2));
    EXPECT_GT(c.instances, 0u);
    EXPECT_TRUE(c.passed()) << g.name() << ": " << c.failures.front();
    EXPECT_EQ(c.unknown, 0u);
  }
}

TEST(LeInfty, Examples) {
  auto g = omega(2, {1, 2});
  auto top = paths_of_degree(g, g.vertex_id("v0_0"), Degree{1, 2}).front();
  EXPECT_EQ(in_le_infty(g, XPath::finite(top)), Verdict::Holds);
  EXPECT_EQ(in_le_infty(g, XPath::finite(g.parse_path("c1_0_0"))), Verdict::Fails);
  auto t = build(builtin::torus());
  EXPECT_EQ(in_le_infty(t, up(t, "@v", "e.f")), Verdict::Holds);
  EXPECT_EQ(in_le_infty(t, up(t, "@v", "e")), Verdict::Fails);
  auto m = build(builtin::mixed());
  EXPECT_EQ(in_le_infty(m, up(m, "@L", "e")), Verdict::Holds);
}

// On a single infinite coordinate the answer is exact: compare with the
// definition over a long unrolling.
TEST(LeInfty, SingleInfiniteCoordinateMatchesUnrolling) {
  auto m = build(builtin::mixed());
  auto b = branching_cycle();
  for (auto* gp : {&m, &b}) {
    auto& g = *gp;
    for (auto v : g.vertices()) {
      if (g.component_acyclic(v)) continue;
      for (auto& p : paths_with_range(g, v, Degree::filled(g.rank(), 2)))
        for (auto& c : cycles_at(g, p.source, Degree::filled(g.rank(), 2))) {
          auto x = XPath::periodic(g, p, c);
          auto deg = x.degree();
          Path long_path = unroll(g, x, p.degree + c.degree * 4);
          bool ok = true;
          for (auto& n : box(long_path.degree))
            for (std::size_t i = 0; i < g.rank(); ++i)
              if (!deg.infinite(i) && n[i] == deg.at(i) &&
                  !g.edges_into(g.segment(long_path, Degree(g.rank()), n).source, i).empty())
                ok = false;
          EXPECT_EQ(in_le_infty(g, x), ok ? Verdict::Holds : Verdict::Fails) << format(g, x);
        }
    }
  }
}
