#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kgraph/kgraph.hpp"

using json = nlohmann::json;
using namespace kgraph;

namespace {

constexpr const char* kVersion = "1.0.0";

enum Exit { Pass = 0, Fail = 1, Undecided = 2, Usage = 64, DataErr = 65 };

struct Options {
  bool json = false;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
};

// Accumulates one report; text lines go to stdout unless --json.
class Report {
 public:
  Report(const Options& opt, std::string command) : opt_(opt) {
    j_["command"] = std::move(command);
    j_["seed"] = opt.seed;
    j_["version"] = kVersion;
    j_["params"] = json::object();
    j_["results"] = json::object();
    j_["verdicts"] = json::array();
  }

  void graph(const KGraph& g) { j_["graph"] = g.name(); }
  json& params() { return j_["params"]; }
  json& results() { return j_["results"]; }
  void line(const std::string& s) { text_ << s << "\n"; }

  void verdict(const std::string& name, Verdict v, const json& witness = nullptr) {
    json e{{"name", name}, {"verdict", verdict_name(v)}};
    if (!witness.is_null()) e["witness"] = witness;
    j_["verdicts"].push_back(e);
    overall_ = combine(overall_, v);
    text_ << verdict_name(v) << "  " << name;
    if (witness.is_string()) text_ << "  [" << witness.get<std::string>() << "]";
    text_ << "\n";
  }

  void check(const Check& c) {
    Verdict v = !c.passed() ? Verdict::Fails : c.unknown ? Verdict::Unknown : Verdict::Holds;
    json e{{"name", c.name}, {"verdict", verdict_name(v)}, {"instances", c.instances},
           {"unknown", c.unknown}, {"failures", c.failures}};
    j_["verdicts"].push_back(e);
    overall_ = combine(overall_, v);
    text_ << verdict_name(v) << "  " << c.name << "  (" << c.instances << " instances";
    if (c.unknown) text_ << ", " << c.unknown << " unknown";
    text_ << ")\n";
    for (std::size_t i = 0; i < c.failures.size() && i < 5; ++i) text_ << "    " << c.failures[i] << "\n";
  }

  int finish() {
    j_["verdict"] = verdict_name(overall_);
    if (opt_.json)
      std::cout << j_.dump(2) << "\n";
    else
      std::cout << text_.str();
    switch (overall_) {
      case Verdict::Holds: return Pass;
      case Verdict::Fails: return Fail;
      default: return Undecided;
    }
  }

 private:
  const Options& opt_;
  json j_;
  std::ostringstream text_;
  Verdict overall_ = Verdict::Holds;
};

Degree parse_degree(const KGraph& g, std::string s) {
  std::vector<std::uint32_t> c;
  for (char& ch : s)
    if (ch == '(' || ch == ')') ch = ' ';
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      c.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    } catch (const std::exception&) {
      throw Error(Errc::BadParams, "bad degree '" + s + "'");
    }
  }
  if (c.size() != g.rank()) throw Error(Errc::BadParams, "degree needs " + std::to_string(g.rank()) + " coordinates");
  return Degree(c);
}

json degree_json(const Degree& d) { return d.coords(); }

json path_json(const KGraph& g, const Path& p) {
  return {{"path", g.format(p)}, {"range", g.vertex_name(p.range)}, {"source", g.vertex_name(p.source)},
          {"degree", degree_json(p.degree)}};
}

json paths_json(const KGraph& g, const std::vector<Path>& ps) {
  json a = json::array();
  for (auto& p : ps) a.push_back(g.format(p));
  return a;
}

std::string join(const KGraph& g, const std::vector<Path>& ps) {
  std::string s;
  for (auto& p : ps) s += (s.empty() ? "" : " ") + g.format(p);
  return s;
}

std::vector<VertexId> chosen_vertices(const KGraph& g, const std::string& name) {
  if (name.empty()) return g.vertices();
  return {g.vertex_id(name)};
}

int cmd_validate(const Options& opt, const std::string& file) {
  auto pres = load_presentation(file);
  auto g = build(pres);
  Report r(opt, "validate");
  r.graph(g);
  r.results()["rank"] = g.rank();
  r.results()["vertices"] = g.vertex_count();
  r.results()["edges"] = g.edge_count();
  r.results()["squares"] = pres.squares.size();
  json comps = json::array();
  std::map<std::size_t, std::vector<std::string>> members;
  for (auto v : g.vertices()) members[g.component(v)].push_back(g.vertex_name(v));
  for (auto& [c, vs] : members)
    comps.push_back({{"vertices", vs}, {"kind", component_kind_name(g.component_kind(g.vertex_id(vs.front())))}});
  r.results()["components"] = comps;
  r.line(g.name() + ": " + std::to_string(g.rank()) + "-graph, " + std::to_string(g.vertex_count()) +
         " vertices, " + std::to_string(g.edge_count()) + " edges, " + std::to_string(pres.squares.size()) +
         " squares");
  for (auto& c : comps) {
    std::string s;
    for (auto& v : c["vertices"]) s += " " + v.get<std::string>();
    r.line("component (" + c["kind"].get<std::string>() + "):" + s);
  }
  r.verdict("factorization rules valid", Verdict::Holds);
  return r.finish();
}

int cmd_paths(const Options& opt, const std::string& file, const std::string& degree,
              const std::string& vertex, const std::string& bound) {
  auto g = load_graph(file);
  Report r(opt, "paths");
  r.graph(g);
  std::vector<Path> out;
  for (auto v : chosen_vertices(g, vertex)) {
    std::vector<Path> ps;
    if (!degree.empty())
      ps = paths_of_degree(g, v, parse_degree(g, degree));
    else if (!bound.empty())
      ps = paths_with_range(g, v, parse_degree(g, bound));
    else
      ps = paths_with_range(g, v);
    out.insert(out.end(), ps.begin(), ps.end());
  }
  if (!degree.empty()) r.params()["degree"] = degree;
  if (!bound.empty()) r.params()["bound"] = bound;
  if (!vertex.empty()) r.params()["vertex"] = vertex;
  json a = json::array();
  for (auto& p : out) {
    a.push_back(path_json(g, p));
    r.line(g.format(p) + "  " + g.vertex_name(p.range) + " <- " + g.vertex_name(p.source) + "  " + p.degree.str());
  }
  r.results()["paths"] = a;
  r.results()["count"] = out.size();
  r.line(std::to_string(out.size()) + " paths");
  return r.finish();
}

int cmd_min(const Options& opt, const std::string& file, const std::string& ls, const std::string& ms) {
  auto g = load_graph(file);
  Report r(opt, "min");
  r.graph(g);
  auto l = g.parse_path(ls), m = g.parse_path(ms);
  r.params()["lambda"] = g.format(l);
  r.params()["mu"] = g.format(m);
  json a = json::array();
  for (auto& p : lambda_min(g, l, m)) {
    a.push_back({g.format(p.first), g.format(p.second)});
    r.line(format(g, p));
  }
  r.results()["pairs"] = a;
  r.line(std::to_string(a.size()) + " minimal common extensions");
  return r.finish();
}

int cmd_ext(const Options& opt, const std::string& file, const std::string& ls,
            const std::vector<std::string>& es) {
  auto g = load_graph(file);
  Report r(opt, "ext");
  r.graph(g);
  auto l = g.parse_path(ls);
  std::vector<Path> e;
  for (auto& s : es) e.push_back(g.parse_path(s));
  sort_unique(e);
  auto x = ext(g, l, e);
  r.params()["lambda"] = g.format(l);
  r.params()["E"] = paths_json(g, e);
  r.results()["ext"] = paths_json(g, x);
  r.line("Ext = {" + join(g, x) + "}");
  if (!e.empty()) {
    auto before = check_exhaustive(g, e.front().range, e);
    r.results()["E_exhaustive"] = before.exhaustive;
    if (before.exhaustive) {
      auto after = check_exhaustive(g, l.source, x);
      r.results()["ext_exhaustive"] = after.exhaustive;
      r.verdict("E exhaustive => Ext exhaustive at s(lambda)", after.exhaustive ? Verdict::Holds : Verdict::Fails,
                after.witness ? json(g.format(*after.witness)) : json());
    }
  }
  return r.finish();
}

int cmd_fe(const Options& opt, const std::string& file, const std::string& vertex, const std::string& cap) {
  auto g = load_graph(file);
  Report r(opt, "fe");
  r.graph(g);
  auto v = g.vertex_id(vertex);
  std::optional<Degree> c;
  if (!cap.empty()) c = parse_degree(g, cap);
  r.params()["vertex"] = vertex;
  if (c) r.params()["max_degree"] = cap;
  auto sets = fe_sets(g, v, c);
  json a = json::array();
  for (auto& e : sets) {
    a.push_back(paths_json(g, e));
    r.line("{" + join(g, e) + "}");
  }
  r.results()["sets"] = a;
  r.results()["count"] = sets.size();
  r.line(std::to_string(sets.size()) + " minimal finite exhaustive sets");
  return r.finish();
}

int cmd_sgp(const Options& opt, const std::string& file, const std::string& cap) {
  auto g = load_graph(file);
  Report r(opt, "sgp");
  r.graph(g);
  Degree c = cap.empty() ? Degree::filled(g.rank(), 1) : parse_degree(g, cap);
  r.params()["trials"] = opt.trials;
  r.params()["cap"] = degree_json(c);
  auto rep = verify_inverse_semigroup(g, opt.trials, opt.seed, c);
  r.results()["samples"] = rep.samples;
  r.results()["closure"] = rep.closure;
  r.line(std::to_string(rep.samples) + " samples, closure of " + std::to_string(rep.closure));
  for (auto& ch : rep.checks) r.check(ch);
  return r.finish();
}

json xpath_json(const KGraph& g, const XPath& x) {
  return {{"path", format(g, x)}, {"degree", x.degree().str()}, {"finite", x.is_finite()}};
}

int cmd_boundary(const Options& opt, const std::string& file, const std::string& vertex) {
  auto g = load_graph(file);
  Report r(opt, "boundary");
  r.graph(g);
  if (!vertex.empty()) r.params()["vertex"] = vertex;
  json out = json::object();
  for (auto v : chosen_vertices(g, vertex)) {
    auto bs = boundary_paths(g, v);
    json a = json::array();
    for (auto& x : bs.paths) a.push_back(xpath_json(g, x));
    json entry{{"paths", a}, {"complete", bs.complete}, {"undecided", bs.undecided}};
    r.line(g.vertex_name(v) + ": " + std::to_string(bs.paths.size()) + " boundary paths" +
           (bs.complete ? "" : " found (search not exhaustive)"));
    for (auto& x : bs.paths) r.line("  " + format(g, x));
    try {
      auto e = extend_to_boundary(g, v);
      entry["extension"] = {{"path", format(g, e.path)}, {"steps", e.steps}, {"sets_used", e.satisfied},
                            {"periodic_closure", e.periodic_closure}};
      r.line("  extension: " + format(g, e.path) + " after " + std::to_string(e.steps) + " steps");
    } catch (const Error& err) {
      if (err.code() != Errc::BudgetExhausted) throw;
      entry["extension"] = nullptr;
      r.line("  extension: " + std::string(err.what()));
    }
    Verdict nonempty = !bs.paths.empty() ? Verdict::Holds : bs.complete ? Verdict::Fails : Verdict::Unknown;
    r.verdict(g.vertex_name(v) + "(boundary) nonempty", nonempty);
    out[g.vertex_name(v)] = entry;
  }
  r.results()["vertices"] = out;
  return r.finish();
}

json germ_json(const KGraph& g, const Germ& h) {
  return {{"lambda", g.format(h.lambda)}, {"mu", g.format(h.mu)}, {"x", format(g, h.x)},
          {"cocycle", cocycle(h)}};
}

int cmd_germs(const Options& opt, const std::string& file, bool table) {
  auto g = load_graph(file);
  Report r(opt, "germs");
  r.graph(g);
  r.params()["table"] = table;
  auto rep = verify_groupoid(g);
  r.results()["germs"] = rep.germs;
  r.results()["units"] = rep.units;
  r.line(std::to_string(rep.germs) + " germs, " + std::to_string(rep.units) + " units");
  if (table) {
    json a = json::array();
    for (auto& h : germ_table(g)) {
      a.push_back(germ_json(g, h));
      r.line("  " + format(g, h));
    }
    r.results()["table"] = a;
  }
  for (auto& c : rep.checks) r.check(c);
  return r.finish();
}

json vertex_verdicts(const KGraph& g, const std::vector<VertexVerdict>& vs, Report& r) {
  json a = json::array();
  for (auto& vv : vs) {
    json e{{"vertex", g.vertex_name(vv.vertex)}, {"verdict", verdict_name(vv.verdict)}};
    if (vv.witness) e["witness"] = format(g, *vv.witness);
    if (!vv.note.empty()) e["note"] = vv.note;
    r.line("  " + g.vertex_name(vv.vertex) + ": " + verdict_name(vv.verdict) +
           (vv.witness ? "  " + format(g, *vv.witness) : "") + (vv.note.empty() ? "" : "  (" + vv.note + ")"));
    a.push_back(e);
  }
  return a;
}

int cmd_check(const Options& opt, const std::string& file, const std::string& which) {
  auto g = load_graph(file);
  Report r(opt, "check");
  r.graph(g);
  r.params()["condition"] = which;
  if (which == "A" || which == "B" || which == "Bprime") {
    auto rep = which == "A" ? check_condition_A(g) : check_condition_B(g, which == "Bprime");
    r.results()["vertices"] = vertex_verdicts(g, rep.vertices, r);
    json witness;
    for (auto& vv : rep.vertices)
      if (vv.verdict == rep.verdict && vv.witness) {
        witness = format(g, *vv.witness);
        break;
      }
    r.verdict("condition " + which, rep.verdict, witness);
  } else if (which == "essfree") {
    auto rep = essential_freeness_report(g);
    r.results()["vertices"] = vertex_verdicts(g, rep.vertices, r);
    r.results()["condition_A"] = verdict_name(rep.condition_a);
    r.results()["agrees_with_A"] = rep.agrees;
    r.line("condition A: " + std::string(verdict_name(rep.condition_a)));
    r.verdict("essentially free", rep.verdict);
    r.verdict("agrees with condition A where both are decided", rep.agrees ? Verdict::Holds : Verdict::Fails);
  } else {
    throw Error(Errc::BadParams, "condition must be A, B, Bprime or essfree");
  }
  return r.finish();
}

int cmd_rep(const Options& opt, const std::string& file, const std::string& which) {
  auto g = load_graph(file);
  Report r(opt, "rep");
  r.graph(g);
  r.params()["family"] = which;
  bool ck = which == "ck";
  if (!ck && which != "tck") throw Error(Errc::BadParams, "family must be tck or ck");
  auto fam = ck ? ck_family(g) : toeplitz_family(g);
  r.results()["dimension"] = fam.basis.size();
  r.results()["operators"] = fam.paths.size();
  r.line(std::string(ck ? "Cuntz-Krieger" : "Toeplitz") + " family on " + std::to_string(fam.basis.size()) +
         " basis vectors, " + std::to_string(fam.paths.size()) + " operators");
  for (auto& c : verify_relations(g, fam)) {
    if (!ck && c.name.rfind("(CK)", 0) == 0) {
      // Informational for a Toeplitz family: the products it leaves nonzero.
      r.results()["ck_nonvanishing"] = c.failures.size();
      r.results()["ck_instances"] = c.instances;
      r.line("(CK) products left nonzero: " + std::to_string(c.failures.size()) + " of " +
             std::to_string(c.instances));
      continue;
    }
    r.check(c);
  }
  return r.finish();
}

int cmd_builtin(const Options& opt, const std::string& name, const std::vector<std::string>& params,
                const std::string& emit) {
  auto pres = builtin::by_name(name, params);
  auto g = build(pres);
  std::string text = write_presentation(pres);
  Report r(opt, "builtin");
  r.graph(g);
  r.params()["name"] = name;
  r.params()["args"] = params;
  if (emit.empty()) {
    if (!opt.json) {
      std::cout << text;
      return Pass;
    }
    r.results()["text"] = text;
  } else {
    std::ofstream out(emit);
    if (!out) throw Error(Errc::BadParams, "cannot write " + emit);
    out << text;
    r.results()["file"] = emit;
    r.line("wrote " + emit);
  }
  r.results()["vertices"] = g.vertex_count();
  r.results()["edges"] = g.edge_count();
  return r.finish();
}

int data_error(Errc c) {
  switch (c) {
    case Errc::InvalidSkeleton:
    case Errc::DegreeMismatch:
    case Errc::MissingSquare:
    case Errc::NotBijective:
    case Errc::EndpointMismatch:
    case Errc::HexagonViolation:
    case Errc::ParseError: return DataErr;
    default: return Usage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in finitely aligned k-graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--json", opt.json, "machine-readable output");
  app.add_option("--seed", opt.seed, "seed for randomized checks")->capture_default_str();
  app.add_option("--trials", opt.trials, "samples for randomized checks")->capture_default_str();
  app.set_version_flag("--version", kVersion);

  std::string file, a, b, degree, vertex, bound, cap, emit;
  std::vector<std::string> rest;
  bool table = false, check = false;
  std::function<int()> run;

  auto* validate = app.add_subcommand("validate", "check a graph file");
  validate->add_option("file", file)->required();
  validate->callback([&] { run = [&] { return cmd_validate(opt, file); }; });

  auto* paths = app.add_subcommand("paths", "list paths");
  paths->add_option("file", file)->required();
  paths->add_option("--degree", degree, "exact degree, e.g. 1,2");
  paths->add_option("--vertex", vertex, "range vertex");
  paths->add_option("--bound", bound, "degree bound (needed on cyclic components)");
  paths->callback([&] { run = [&] { return cmd_paths(opt, file, degree, vertex, bound); }; });

  auto* min = app.add_subcommand("min", "minimal common extensions of two paths");
  min->add_option("file", file)->required();
  min->add_option("lambda", a)->required();
  min->add_option("mu", b)->required();
  min->callback([&] { run = [&] { return cmd_min(opt, file, a, b); }; });

  auto* ext = app.add_subcommand("ext", "Ext(lambda; E)");
  ext->add_option("file", file)->required();
  ext->add_option("lambda", a)->required();
  ext->add_option("E", rest)->required();
  ext->callback([&] { run = [&] { return cmd_ext(opt, file, a, rest); }; });

  auto* fe = app.add_subcommand("fe", "minimal finite exhaustive sets at a vertex");
  fe->add_option("file", file)->required();
  fe->add_option("vertex", vertex)->required();
  fe->add_option("--max-degree", cap, "degree cap on members");
  fe->callback([&] { run = [&] { return cmd_fe(opt, file, vertex, cap); }; });

  auto* sgp = app.add_subcommand("sgp", "inverse semigroup axioms on random elements");
  sgp->add_option("file", file)->required();
  sgp->add_flag("--check", check)->required();
  sgp->add_option("--cap", cap, "degree cap on sampled pairs (default all ones)");
  sgp->callback([&] { run = [&] { return cmd_sgp(opt, file, cap); }; });

  auto* boundary = app.add_subcommand("boundary", "boundary paths per vertex");
  boundary->add_option("file", file)->required();
  boundary->add_option("--vertex", vertex);
  boundary->callback([&] { run = [&] { return cmd_boundary(opt, file, vertex); }; });

  auto* germs = app.add_subcommand("germs", "germ groupoid over the boundary (acyclic graphs)");
  germs->add_option("file", file)->required();
  germs->add_flag("--table", table, "list every germ");
  germs->callback([&] { run = [&] { return cmd_germs(opt, file, table); }; });

  auto* chk = app.add_subcommand("check", "aperiodicity conditions");
  chk->add_option("file", file)->required();
  chk->add_option("condition", a, "A, B, Bprime or essfree")->required();
  chk->callback([&] { run = [&] { return cmd_check(opt, file, a); }; });

  auto* rep = app.add_subcommand("rep", "matrix families and their relations (acyclic graphs)");
  rep->add_option("file", file)->required();
  rep->add_option("family", a, "tck or ck")->required();
  rep->callback([&] { run = [&] { return cmd_rep(opt, file, a); }; });

  auto* bi = app.add_subcommand("builtin", "emit a builtin graph");
  bi->add_option("name", a)->required();
  bi->add_option("params", rest);
  bi->add_option("--emit", emit, "output file");
  bi->callback([&] { run = [&] { return cmd_builtin(opt, a, rest, emit); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return Usage;
  }

  try {
    return run();
  } catch (const Error& e) {
    if (opt.json)
      std::cout << json{{"error", {{"code", errc_name(e.code())}, {"message", e.what()}}}}.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return data_error(e.code());
  }
}
