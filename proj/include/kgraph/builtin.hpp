#ifndef KGRAPH_BUILTIN_HPP
#define KGRAPH_BUILTIN_HPP

#include <sstream>
#include <string>
#include <vector>

#include "io.hpp"

namespace kgraph::builtin {

namespace detail {

inline std::string coords(const Degree& p) {
  std::string s;
  for (std::size_t i = 0; i < p.rank(); ++i) {
    if (i) s += '_';
    s += std::to_string(p[i]);
  }
  return s;
}

}  // namespace detail

// The grid k-graph on {p : p <= m}: one edge (p, p + e_i) for each admissible
// p and i, with range p and source p + e_i.
inline Presentation omega(std::size_t k, const Degree& m) {
  if (k < 1 || m.rank() != k) throw Error(Errc::BadParams, "omega needs k >= 1 and m in N^k");
  Presentation p;
  p.name = "omega_" + std::to_string(k) + "_" + detail::coords(m);
  p.skeleton.k = k;
  auto vname = [](const Degree& q) { return "v" + detail::coords(q); };
  auto ename = [](std::size_t i, const Degree& q) {
    return "c" + std::to_string(i + 1) + "_" + detail::coords(q);
  };
  for (auto& q : box(m)) {
    p.skeleton.vertices.push_back(vname(q));
    for (std::size_t i = 0; i < k; ++i)
      if (q[i] < m[i])
        p.skeleton.edges.push_back({ename(i, q), i + 1, vname(q), vname(q + Degree::unit(k, i))});
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        auto ei = Degree::unit(k, i), ej = Degree::unit(k, j);
        if (!(q + ei + ej).le(m)) continue;
        p.squares.push_back({ename(i, q), ename(j, q + ei), ename(j, q), ename(i, q + ej)});
      }
  }
  return p;
}

inline Presentation loop1() {
  Presentation p;
  p.name = "loop1";
  p.skeleton.k = 1;
  p.skeleton.vertices = {"v"};
  p.skeleton.edges = {{"e", 1, "v", "v"}};
  return p;
}

// Chain v0 <- v1 <- ... <- vN with edge e_i : v_{i-1} <- v_i.
inline Presentation tail(std::size_t n) {
  if (n < 1) throw Error(Errc::BadParams, "tail needs N >= 1");
  Presentation p;
  p.name = "tail_" + std::to_string(n);
  p.skeleton.k = 1;
  for (std::size_t i = 0; i <= n; ++i) p.skeleton.vertices.push_back("v" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i)
    p.skeleton.edges.push_back(
        {"e" + std::to_string(i), 1, "v" + std::to_string(i - 1), "v" + std::to_string(i)});
  return p;
}

// Nine vertices in three rows: A B on top, C D E in the middle, v F w G at
// the bottom. Color 1 runs right to left within a row, color 2 runs down.
// zeta and delta are the two edges left unnamed in the usual drawing; the
// parallel edges G -> w are tau0 .. tau{N-1}.
inline Presentation paper_ex2(std::size_t n) {
  if (n < 1) throw Error(Errc::BadParams, "paper_ex2 needs N >= 1");
  Presentation p;
  p.name = "paper_ex2_" + std::to_string(n);
  p.skeleton.k = 2;
  p.skeleton.vertices = {"A", "B", "C", "D", "E", "F", "G", "v", "w"};
  p.skeleton.edges = {
      {"gamma", 1, "A", "B"}, {"zeta", 1, "C", "D"}, {"xi", 1, "D", "E"},
      {"mu", 1, "v", "F"},    {"beta", 1, "F", "w"}, {"alpha", 2, "C", "A"},
      {"eta", 2, "D", "B"},   {"lambda", 2, "v", "C"}, {"delta", 2, "F", "D"},
      {"omega", 2, "w", "E"},
  };
  for (std::size_t i = 0; i < n; ++i)
    p.skeleton.edges.push_back({"tau" + std::to_string(i), 1, "w", "G"});
  p.squares = {
      {"zeta", "eta", "alpha", "gamma"},
      {"mu", "delta", "lambda", "zeta"},
      {"beta", "omega", "delta", "xi"},
  };
  return p;
}

// One vertex with a loop of each color; the only square is e.f ~ f.e.
inline Presentation torus() {
  Presentation p;
  p.name = "torus";
  p.skeleton.k = 2;
  p.skeleton.vertices = {"v"};
  p.skeleton.edges = {{"e", 1, "v", "v"}, {"f", 2, "v", "v"}};
  p.squares = {{"e", "f", "f", "e"}};
  return p;
}

// loop1 viewed as a 2-graph, disjoint from omega(2,(1,1)).
inline Presentation mixed() {
  Presentation p = omega(2, Degree{1, 1});
  p.name = "mixed";
  p.skeleton.vertices.push_back("L");
  p.skeleton.edges.push_back({"e", 1, "L", "L"});
  return p;
}

inline std::vector<std::string> names() {
  return {"omega", "loop1", "paper_ex2", "tail", "torus", "mixed"};
}

// params: omega takes k and a comma-separated m; paper_ex2 and tail take N.
inline Presentation by_name(const std::string& name, const std::vector<std::string>& params) {
  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      long v = std::stol(s, &used);
      if (used != s.size() || v < 0) throw std::invalid_argument("");
      return static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
      throw Error(Errc::BadParams, "bad number '" + s + "'");
    }
  };
  auto want = [&](std::size_t n) {
    if (params.size() != n)
      throw Error(Errc::BadParams, name + " takes " + std::to_string(n) + " parameter(s)");
  };
  if (name == "omega") {
    want(2);
    std::size_t k = number(params[0]);
    std::vector<std::uint32_t> m;
    std::string item;
    std::istringstream in(params[1]);
    while (std::getline(in, item, ',')) m.push_back(number(item));
    if (m.size() != k) throw Error(Errc::BadParams, "m must have k coordinates");
    return omega(k, Degree(m));
  }
  if (name == "loop1" || name == "torus" || name == "mixed") {
    want(0);
    return name == "loop1" ? loop1() : name == "torus" ? torus() : mixed();
  }
  if (name == "paper_ex2" || name == "tail") {
    want(1);
    auto n = number(params[0]);
    return name == "tail" ? tail(n) : paper_ex2(n);
  }
  throw Error(Errc::BadParams, "unknown builtin '" + name + "'");
}

}  // namespace kgraph::builtin

#endif
