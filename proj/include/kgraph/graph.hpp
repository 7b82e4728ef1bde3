#ifndef KGRAPH_GRAPH_HPP
#define KGRAPH_GRAPH_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "degree.hpp"
#include "error.hpp"

namespace kgraph {

struct VertexId {
  std::uint32_t index = 0;
  friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

struct EdgeId {
  std::uint32_t index = 0;
  friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

struct SkeletonEdge {
  std::string id;
  std::size_t color = 1;  // 1-based, as in the file format
  std::string range;
  std::string source;
};

struct Skeleton {
  std::size_t k = 0;
  std::vector<std::string> vertices;
  std::vector<SkeletonEdge> edges;
};

// e.f ~ f2.e2 where color(e) = color(e2) < color(f) = color(f2).
struct Square {
  std::string e, f, f2, e2;
};

using FactorizationSquares = std::vector<Square>;

// A morphism in normal form: the word is sorted by color, color 1 nearest
// the range. Vertex paths have an empty word.
struct Path {
  VertexId range;
  VertexId source;
  std::vector<EdgeId> word;
  Degree degree;

  bool is_vertex() const { return word.empty(); }

  friend bool operator==(const Path& a, const Path& b) {
    return a.range == b.range && a.word == b.word && a.source == b.source;
  }
  friend std::strong_ordering operator<=>(const Path& a, const Path& b) {
    if (auto c = a.range <=> b.range; c != 0) return c;
    if (auto c = a.degree <=> b.degree; c != 0) return c;
    if (auto c = a.word <=> b.word; c != 0) return c;
    return a.source <=> b.source;
  }
};

enum class ComponentKind { Acyclic, SingleColor, General };

inline const char* component_kind_name(ComponentKind k) {
  switch (k) {
    case ComponentKind::Acyclic: return "acyclic";
    case ComponentKind::SingleColor: return "single-color";
    case ComponentKind::General: return "general";
  }
  return "?";
}

class KGraph {
 public:
  // Checks the skeleton and every square invariant; the only way to get a
  // KGraph, so every operation below may assume unique factorization.
  static KGraph validate(Skeleton sk, FactorizationSquares sq, std::string name = {});

  const std::string& name() const { return name_; }
  std::size_t rank() const { return k_; }
  std::size_t vertex_count() const { return vnames_.size(); }
  std::size_t edge_count() const { return enames_.size(); }
  const Skeleton& skeleton() const { return skeleton_; }
  const FactorizationSquares& squares() const { return squares_; }

  const std::string& vertex_name(VertexId v) const { return vnames_[v.index]; }
  const std::string& edge_name(EdgeId e) const { return enames_[e.index]; }
  std::optional<VertexId> find_vertex(std::string_view id) const {
    auto it = std::lower_bound(vnames_.begin(), vnames_.end(), id);
    if (it == vnames_.end() || *it != id) return std::nullopt;
    return VertexId{static_cast<std::uint32_t>(it - vnames_.begin())};
  }
  std::optional<EdgeId> find_edge(std::string_view id) const {
    auto it = std::lower_bound(enames_.begin(), enames_.end(), id);
    if (it == enames_.end() || *it != id) return std::nullopt;
    return EdgeId{static_cast<std::uint32_t>(it - enames_.begin())};
  }
  VertexId vertex_id(std::string_view id) const {
    auto v = find_vertex(id);
    if (!v) throw Error(Errc::UnknownId, "no vertex '" + std::string(id) + "'");
    return *v;
  }
  EdgeId edge_id(std::string_view id) const {
    auto e = find_edge(id);
    if (!e) throw Error(Errc::UnknownId, "no edge '" + std::string(id) + "'");
    return *e;
  }

  std::vector<VertexId> vertices() const {
    std::vector<VertexId> out;
    for (std::uint32_t i = 0; i < vnames_.size(); ++i) out.push_back(VertexId{i});
    return out;
  }

  std::size_t color(EdgeId e) const { return ecolor_[e.index]; }  // 0-based
  VertexId range(EdgeId e) const { return erange_[e.index]; }
  VertexId source(EdgeId e) const { return esource_[e.index]; }

  // Edges e with r(e) = v and the given 0-based color, in id order.
  const std::vector<EdgeId>& edges_into(VertexId v, std::size_t c) const {
    return into_[v.index * k_ + c];
  }
  // Number of edges of any color with range v.
  std::size_t in_degree(VertexId v) const {
    std::size_t n = 0;
    for (std::size_t c = 0; c < k_; ++c) n += edges_into(v, c).size();
    return n;
  }

  bool acyclic() const { return acyclic_; }
  bool on_cycle(VertexId v) const { return on_cycle_[v.index]; }
  std::size_t component(VertexId v) const { return comp_[v.index]; }
  ComponentKind component_kind(VertexId v) const { return comp_kind_[comp_[v.index]]; }
  bool component_acyclic(VertexId v) const {
    return component_kind(v) == ComponentKind::Acyclic;
  }

  Path vertex(VertexId v) const { return Path{v, v, {}, Degree(k_)}; }
  Path edge(EdgeId e) const {
    return Path{range(e), source(e), {e}, Degree::unit(k_, color(e))};
  }

  // Normal form of an arbitrary composable edge word.
  Path path(std::span<const EdgeId> word) const {
    if (word.empty()) throw Error(Errc::BadParams, "empty word has no range; use vertex()");
    for (std::size_t i = 0; i + 1 < word.size(); ++i)
      if (source(word[i]) != range(word[i + 1]))
        throw Error(Errc::NotComposable, "s(" + edge_name(word[i]) + ") != r(" +
                                             edge_name(word[i + 1]) + ")");
    Path p{range(word.front()), source(word.back()), {word.begin(), word.end()}, Degree(k_)};
    for (auto e : word) ++p.degree[color(e)];
    normalize(p.word);
    return p;
  }

  Path compose(const Path& a, const Path& b) const {
    if (a.source != b.range)
      throw Error(Errc::NotComposable,
                  "s(" + format(a) + ") != r(" + format(b) + ")");
    Path p{a.range, b.source, a.word, a.degree + b.degree};
    p.word.insert(p.word.end(), b.word.begin(), b.word.end());
    normalize(p.word);
    return p;
  }

  // lambda(m, n).
  Path segment(const Path& lambda, const Degree& m, const Degree& n) const {
    if (!m.le(n) || !n.le(lambda.degree))
      throw Error(Errc::DegreeOutOfRange, "segment " + m.str() + ".." + n.str() + " of " +
                                              format(lambda) + " of degree " +
                                              lambda.degree.str());
    if (m.is_zero() && n == lambda.degree) return lambda;
    std::vector<std::size_t> target;
    auto push = [&](const Degree& d) {
      for (std::size_t c = 0; c < k_; ++c) target.insert(target.end(), d[c], c);
    };
    push(m);
    push(n - m);
    push(lambda.degree - n);
    std::vector<EdgeId> w = lambda.word;
    reorder(w, target);
    std::size_t lo = m.total(), hi = n.total();
    VertexId r = lo == 0 ? lambda.range : source(w[lo - 1]);
    VertexId s = hi == 0 ? lambda.range : source(w[hi - 1]);
    return Path{r, s, std::vector<EdgeId>(w.begin() + lo, w.begin() + hi), n - m};
  }

  bool is_prefix(const Path& mu, const Path& lambda) const {
    return mu.range == lambda.range && mu.degree.le(lambda.degree) &&
           segment(lambda, Degree(k_), mu.degree) == mu;
  }

  // "@v" or dot-separated edge ids.
  std::string format(const Path& p) const {
    if (p.word.empty()) return "@" + vertex_name(p.range);
    std::string s;
    for (std::size_t i = 0; i < p.word.size(); ++i) {
      if (i) s += '.';
      s += edge_name(p.word[i]);
    }
    return s;
  }

  Path parse_path(std::string_view text) const {
    if (text.empty()) throw Error(Errc::BadParams, "empty path");
    if (text.front() == '@') return vertex(vertex_id(text.substr(1)));
    std::vector<EdgeId> word;
    std::size_t pos = 0;
    while (true) {
      auto dot = text.find('.', pos);
      word.push_back(edge_id(text.substr(pos, dot == std::string_view::npos ? dot : dot - pos)));
      if (dot == std::string_view::npos) break;
      pos = dot + 1;
    }
    return path(word);
  }

  // Rewrites the adjacent pair (a, b) of distinct colors to the pair (a', b')
  // with color(a') = color(b), color(b') = color(a) and a.b = a'.b'.
  std::pair<EdgeId, EdgeId> swap(EdgeId a, EdgeId b) const {
    const auto& table = color(a) < color(b) ? forward_ : backward_;
    return table.at(key(a, b));
  }

 private:
  KGraph() = default;

  static std::uint64_t key(EdgeId a, EdgeId b) {
    return (std::uint64_t(a.index) << 32) | b.index;
  }

  void normalize(std::vector<EdgeId>& w) const {
    for (std::size_t i = 1; i < w.size(); ++i)
      for (std::size_t j = i; j > 0 && color(w[j - 1]) > color(w[j]); --j)
        std::tie(w[j - 1], w[j]) = swap(w[j - 1], w[j]);
  }

  // Permutes w by adjacent swaps until its color sequence equals target.
  void reorder(std::vector<EdgeId>& w, const std::vector<std::size_t>& target) const {
    for (std::size_t p = 0; p < w.size(); ++p) {
      std::size_t q = p;
      while (color(w[q]) != target[p]) ++q;
      for (; q > p; --q) std::tie(w[q - 1], w[q]) = swap(w[q - 1], w[q]);
    }
  }

  void check_skeleton();
  void check_squares();
  void analyse_components();

  std::string name_;
  std::size_t k_ = 0;
  Skeleton skeleton_;
  FactorizationSquares squares_;
  std::vector<std::string> vnames_, enames_;
  std::vector<std::size_t> ecolor_;
  std::vector<VertexId> erange_, esource_;
  std::vector<std::vector<EdgeId>> into_;
  std::unordered_map<std::uint64_t, std::pair<EdgeId, EdgeId>> forward_, backward_;
  bool acyclic_ = true;
  std::vector<bool> on_cycle_;
  std::vector<std::size_t> comp_;
  std::vector<ComponentKind> comp_kind_;
};

inline KGraph KGraph::validate(Skeleton sk, FactorizationSquares sq, std::string name) {
  KGraph g;
  g.name_ = std::move(name);
  g.skeleton_ = std::move(sk);
  g.squares_ = std::move(sq);
  g.check_skeleton();
  g.check_squares();
  g.analyse_components();
  return g;
}

inline void KGraph::check_skeleton() {
  const auto& sk = skeleton_;
  if (sk.k < 1) throw Error(Errc::InvalidSkeleton, "k must be at least 1");
  k_ = sk.k;
  vnames_ = sk.vertices;
  std::sort(vnames_.begin(), vnames_.end());
  if (auto it = std::adjacent_find(vnames_.begin(), vnames_.end()); it != vnames_.end())
    throw Error(Errc::InvalidSkeleton, "duplicate vertex '" + *it + "'");
  std::vector<const SkeletonEdge*> edges;
  for (auto& e : sk.edges) edges.push_back(&e);
  std::sort(edges.begin(), edges.end(), [](auto* a, auto* b) { return a->id < b->id; });
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    if (edges[i]->id == edges[i + 1]->id)
      throw Error(Errc::InvalidSkeleton, "duplicate edge '" + edges[i]->id + "'");
  into_.assign(vnames_.size() * k_, {});
  for (auto* e : edges) {
    if (e->color < 1 || e->color > k_)
      throw Error(Errc::InvalidSkeleton,
                  "edge '" + e->id + "' has color " + std::to_string(e->color) +
                      " outside 1.." + std::to_string(k_));
    auto r = find_vertex(e->range), s = find_vertex(e->source);
    if (!r || !s)
      throw Error(Errc::InvalidSkeleton, "edge '" + e->id + "' has an unknown endpoint");
    EdgeId id{static_cast<std::uint32_t>(enames_.size())};
    enames_.push_back(e->id);
    ecolor_.push_back(e->color - 1);
    erange_.push_back(*r);
    esource_.push_back(*s);
    into_[r->index * k_ + (e->color - 1)].push_back(id);
  }
}

inline void KGraph::check_squares() {
  auto describe = [&](const Square& s) {
    return "square " + s.e + " " + s.f + " ~ " + s.f2 + " " + s.e2;
  };
  for (const auto& s : squares_) {
    EdgeId e{}, f{}, f2{}, e2{};
    try {
      e = edge_id(s.e), f = edge_id(s.f), f2 = edge_id(s.f2), e2 = edge_id(s.e2);
    } catch (const Error& err) {
      throw Error(Errc::InvalidSkeleton, describe(s) + ": " + err.what());
    }
    if (color(e) >= color(f) || color(e) != color(e2) || color(f) != color(f2))
      throw Error(Errc::DegreeMismatch,
                  describe(s) + ": needs color(e) = color(e') < color(f) = color(f')");
    if (source(e) != range(f) || source(f2) != range(e2))
      throw Error(Errc::EndpointMismatch, describe(s) + ": a side is not a composable word");
    if (range(e) != range(f2) || source(f) != source(e2))
      throw Error(Errc::EndpointMismatch, describe(s) + ": sides have different " +
                                              (range(e) != range(f2) ? "ranges" : "sources"));
    if (!forward_.emplace(key(e, f), std::pair{f2, e2}).second)
      throw Error(Errc::NotBijective, describe(s) + ": " + s.e + " " + s.f +
                                          " already has an image");
    if (!backward_.emplace(key(f2, e2), std::pair{e, f}).second)
      throw Error(Errc::NotBijective, describe(s) + ": " + s.f2 + " " + s.e2 +
                                          " is already an image");
  }
  // Every bicolored composable word must occur on its side of some square.
  for (std::uint32_t a = 0; a < enames_.size(); ++a)
    for (std::size_t c = 0; c < k_; ++c) {
      if (c == color(EdgeId{a})) continue;
      for (auto b : edges_into(source(EdgeId{a}), c)) {
        bool ordered = color(EdgeId{a}) < c;
        const auto& table = ordered ? forward_ : backward_;
        if (!table.count(key(EdgeId{a}, b)))
          throw Error(ordered ? Errc::MissingSquare : Errc::NotBijective,
                      "word " + enames_[a] + " " + edge_name(b) +
                          (ordered ? " has no square" : " is not the image of any square"));
      }
    }
  if (k_ < 3) return;
  // Both reduced words for reversing three colors must agree.
  for (std::uint32_t a = 0; a < enames_.size(); ++a) {
    EdgeId e{a};
    for (std::size_t cj = color(e) + 1; cj < k_; ++cj)
      for (auto f : edges_into(source(e), cj))
        for (std::size_t cl = cj + 1; cl < k_; ++cl)
          for (auto h : edges_into(source(f), cl)) {
            std::vector<EdgeId> w1{e, f, h}, w2{e, f, h};
            auto step = [&](std::vector<EdgeId>& w, std::size_t i) {
              std::tie(w[i], w[i + 1]) = swap(w[i], w[i + 1]);
            };
            step(w1, 0), step(w1, 1), step(w1, 0);
            step(w2, 1), step(w2, 0), step(w2, 1);
            if (w1 != w2)
              throw Error(Errc::HexagonViolation,
                          "word " + edge_name(e) + " " + edge_name(f) + " " + edge_name(h) +
                              " sorts to " + edge_name(w1[0]) + " " + edge_name(w1[1]) + " " +
                              edge_name(w1[2]) + " and to " + edge_name(w2[0]) + " " +
                              edge_name(w2[1]) + " " + edge_name(w2[2]));
          }
  }
}

inline void KGraph::analyse_components() {
  std::size_t n = vnames_.size();
  // A vertex is on a cycle iff it reaches itself through at least one edge.
  std::vector<std::vector<std::uint32_t>> succ(n);  // source -> range
  for (std::uint32_t e = 0; e < enames_.size(); ++e)
    succ[esource_[e].index].push_back(erange_[e].index);
  on_cycle_.assign(n, false);
  for (std::uint32_t v = 0; v < n; ++v) {
    std::vector<bool> seen(n, false);
    std::vector<std::uint32_t> stack(succ[v].begin(), succ[v].end());
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      if (seen[u]) continue;
      seen[u] = true;
      if (u == v) {
        on_cycle_[v] = true;
        break;
      }
      for (auto w : succ[u]) stack.push_back(w);
    }
    if (on_cycle_[v]) acyclic_ = false;
  }
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::uint32_t e = 0; e < enames_.size(); ++e)
    parent[find(erange_[e].index)] = find(esource_[e].index);
  std::map<std::size_t, std::size_t> label;
  comp_.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto root = find(v);
    auto [it, fresh] = label.emplace(root, label.size());
    comp_[v] = it->second;
  }
  std::vector<bool> cyclic(label.size(), false);
  std::vector<std::vector<bool>> colors(label.size(), std::vector<bool>(k_, false));
  for (std::size_t v = 0; v < n; ++v)
    if (on_cycle_[v]) cyclic[comp_[v]] = true;
  for (std::uint32_t e = 0; e < enames_.size(); ++e)
    colors[comp_[erange_[e].index]][ecolor_[e]] = true;
  for (std::size_t c = 0; c < label.size(); ++c) {
    auto used = std::count(colors[c].begin(), colors[c].end(), true);
    comp_kind_.push_back(!cyclic[c]   ? ComponentKind::Acyclic
                         : used <= 1  ? ComponentKind::SingleColor
                                      : ComponentKind::General);
  }
}

}  // namespace kgraph

#endif
