#ifndef KGRAPH_IO_HPP
#define KGRAPH_IO_HPP

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "graph.hpp"

namespace kgraph {

struct Presentation {
  std::string name;
  Skeleton skeleton;
  FactorizationSquares squares;
};

namespace detail {

inline bool valid_id(const std::string& s) {
  if (s.empty()) return false;
  for (unsigned char c : s)
    if (!std::isalnum(c) && c != '_') return false;
  return true;
}

inline std::vector<std::string> tokenize(std::string line) {
  // ':' '~' and '<-' are tokens even without surrounding blanks.
  std::string spaced;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == ':' || line[i] == '~') {
      spaced += ' ', spaced += line[i], spaced += ' ';
    } else if (line[i] == '<' && i + 1 < line.size() && line[i + 1] == '-') {
      spaced += " <- ";
      ++i;
    } else {
      spaced += line[i];
    }
  }
  std::istringstream in(spaced);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

}  // namespace detail

// Parses the `kgraph v1` text format. Errors cite the 1-based line number.
inline Presentation parse_presentation(const std::string& text, std::string name = {}) {
  Presentation p;
  p.name = std::move(name);
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool header = false, colors = false;
  auto fail = [&](const std::string& msg) {
    throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": " + msg);
  };
  auto id = [&](const std::string& s) {
    if (!detail::valid_id(s)) fail("bad identifier '" + s + "'");
    return s;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto t = detail::tokenize(line);
    if (t.empty()) continue;
    if (!header) {
      if (t.size() != 2 || t[0] != "kgraph" || t[1] != "v1") fail("expected 'kgraph v1'");
      header = true;
      continue;
    }
    if (t[0] == "colors") {
      if (colors) fail("duplicate 'colors' line");
      if (t.size() != 2) fail("expected 'colors <k>'");
      try {
        std::size_t used = 0;
        long k = std::stol(t[1], &used);
        if (used != t[1].size() || k < 1) throw std::invalid_argument("");
        p.skeleton.k = static_cast<std::size_t>(k);
      } catch (const std::exception&) {
        fail("bad color count '" + t[1] + "'");
      }
      colors = true;
    } else if (t[0] == "vertex") {
      if (t.size() != 2) fail("expected 'vertex <id>'");
      p.skeleton.vertices.push_back(id(t[1]));
    } else if (t[0] == "edge") {
      // edge <id> : <range> <- <source> color <i>
      if (t.size() != 8 || t[2] != ":" || t[4] != "<-" || t[6] != "color")
        fail("expected 'edge <id> : <range> <- <source> color <i>'");
      SkeletonEdge e{id(t[1]), 0, id(t[3]), id(t[5])};
      try {
        std::size_t used = 0;
        long c = std::stol(t[7], &used);
        if (used != t[7].size() || c < 1) throw std::invalid_argument("");
        e.color = static_cast<std::size_t>(c);
      } catch (const std::exception&) {
        fail("bad color '" + t[7] + "'");
      }
      p.skeleton.edges.push_back(std::move(e));
    } else if (t[0] == "square") {
      if (t.size() != 6 || t[3] != "~") fail("expected 'square <e> <f> ~ <f'> <e'>'");
      p.squares.push_back(Square{id(t[1]), id(t[2]), id(t[4]), id(t[5])});
    } else {
      fail("unknown directive '" + t[0] + "'");
    }
  }
  if (!header) throw Error(Errc::ParseError, "line 1: expected 'kgraph v1'");
  if (!colors) throw Error(Errc::ParseError, "missing 'colors' line");
  return p;
}

inline Presentation load_presentation(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw Error(Errc::ParseError, "cannot open " + filename);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string stem = filename;
  if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem.erase(0, slash + 1);
  if (auto dot = stem.rfind('.'); dot != std::string::npos && dot > 0) stem.erase(dot);
  return parse_presentation(buf.str(), stem);
}

inline KGraph build(const Presentation& p) {
  return KGraph::validate(p.skeleton, p.squares, p.name);
}

inline KGraph load_graph(const std::string& filename) { return build(load_presentation(filename)); }

inline std::string write_presentation(const Presentation& p) {
  std::ostringstream out;
  out << "kgraph v1\n";
  if (!p.name.empty()) out << "# " << p.name << "\n";
  out << "colors " << p.skeleton.k << "\n";
  for (auto& v : p.skeleton.vertices) out << "vertex " << v << "\n";
  for (auto& e : p.skeleton.edges)
    out << "edge " << e.id << " : " << e.range << " <- " << e.source << " color " << e.color
        << "\n";
  for (auto& s : p.squares) out << "square " << s.e << " " << s.f << " ~ " << s.f2 << " " << s.e2 << "\n";
  return out.str();
}

}  // namespace kgraph

#endif
