#ifndef KGRAPH_REPRESENTATION_HPP
#define KGRAPH_REPRESENTATION_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "groupoid.hpp"

namespace kgraph {

using Matrix = Eigen::SparseMatrix<std::int64_t>;

// 0/1 matrices T_lambda on l2 of a finite basis of paths.
struct PartialIsometryFamily {
  std::vector<Path> basis;       // all of Lambda, or the boundary
  std::vector<Path> paths;       // the lambda with an operator, i.e. all of Lambda
  std::map<Path, Matrix> ops;
  bool on_boundary = false;

  const Matrix& op(const Path& l) const { return ops.at(l); }
};

namespace detail {

// T_lambda delta_nu = delta_{lambda nu} whenever s(lambda) = r(nu).
inline PartialIsometryFamily build_family(const KGraph& g, std::vector<Path> basis, bool boundary) {
  PartialIsometryFamily fam;
  fam.basis = std::move(basis);
  fam.paths = all_paths(g);
  fam.on_boundary = boundary;
  std::map<Path, Eigen::Index> index;
  for (std::size_t i = 0; i < fam.basis.size(); ++i) index.emplace(fam.basis[i], Eigen::Index(i));
  auto n = Eigen::Index(fam.basis.size());
  for (auto& l : fam.paths) {
    std::vector<Eigen::Triplet<std::int64_t>> entries;
    for (std::size_t j = 0; j < fam.basis.size(); ++j) {
      if (fam.basis[j].range != l.source) continue;
      auto it = index.find(g.compose(l, fam.basis[j]));
      if (it == index.end())
        throw Error(Errc::NotInDomain, g.format(l) + " maps " + g.format(fam.basis[j]) + " off the basis");
      entries.emplace_back(it->second, Eigen::Index(j), 1);
    }
    Matrix m(n, n);
    m.setFromTriplets(entries.begin(), entries.end());
    fam.ops.emplace(l, std::move(m));
  }
  return fam;
}

inline bool is_zero(const Matrix& m) {
  Matrix c = m;
  c.prune(std::int64_t(0));
  return c.nonZeros() == 0;
}

inline bool same(const Matrix& a, const Matrix& b) { return is_zero(Matrix(a - b)); }

}  // namespace detail

// Toeplitz family on l2(Lambda); needs an acyclic graph.
inline PartialIsometryFamily toeplitz_family(const KGraph& g) {
  return detail::build_family(g, all_paths(g), false);
}

// Cuntz-Krieger family on l2(boundary); needs an acyclic graph.
inline PartialIsometryFamily ck_family(const KGraph& g) {
  std::vector<Path> basis;
  for (auto& x : all_boundary_paths(g)) basis.push_back(x.prefix());
  std::sort(basis.begin(), basis.end());
  return detail::build_family(g, std::move(basis), true);
}

// Relations (1)-(3), partial isometries with source projection T_{s(lambda)},
// T_v != 0, and (CK) over every minimal finite exhaustive set. Every check
// runs over all instances; `ck` is reported but not expected to hold for a
// Toeplitz family.
inline std::vector<Check> verify_relations(const KGraph& g, const PartialIsometryFamily& fam) {
  Check pi{"T T^T T = T"}, srcproj{"T_lambda^T T_lambda = T_s(lambda)"};
  Check r1{"(1) T_v mutually orthogonal projections"}, r2{"(2) T_lambda T_mu = T_lambda.mu"};
  Check r3{"(3) T_lambda^T T_mu = sum over Lambda^min of T_alpha T_beta^T"};
  Check nonzero{"T_v != 0"}, ck{"(CK) prod over E of (T_v - T_lambda T_lambda^T) = 0"};
  for (auto& l : fam.paths) {
    const Matrix& t = fam.op(l);
    Matrix tt = t.transpose();
    ++pi.instances;
    if (!detail::same(Matrix(t * tt * t), t)) pi.fail(g.format(l));
    ++srcproj.instances;
    if (!detail::same(Matrix(tt * t), fam.op(g.vertex(l.source)))) srcproj.fail(g.format(l));
  }
  for (auto v : g.vertices()) {
    const Matrix& p = fam.op(g.vertex(v));
    ++nonzero.instances;
    if (detail::is_zero(p)) nonzero.fail(g.vertex_name(v));
    ++r1.instances;
    bool diagonal = true;
    for (int c = 0; c < p.outerSize(); ++c)
      for (Matrix::InnerIterator it(p, c); it; ++it) diagonal = diagonal && it.row() == it.col();
    if (!diagonal || !detail::same(Matrix(p * p), p)) r1.fail(g.vertex_name(v) + " is not a diagonal projection");
    for (auto w : g.vertices()) {
      if (w == v) continue;
      ++r1.instances;
      if (!detail::is_zero(Matrix(p * fam.op(g.vertex(w)))))
        r1.fail(g.vertex_name(v) + ", " + g.vertex_name(w) + " not orthogonal");
    }
  }
  for (auto& l : fam.paths)
    for (auto& m : fam.paths) {
      const Matrix& a = fam.op(l);
      const Matrix& b = fam.op(m);
      if (l.source == m.range) {
        ++r2.instances;
        if (!detail::same(Matrix(a * b), fam.op(g.compose(l, m)))) r2.fail(g.format(l) + ", " + g.format(m));
      }
      ++r3.instances;
      auto n = Eigen::Index(fam.basis.size());
      Matrix rhs(n, n);
      if (l.range == m.range)
        for (auto& [alpha, beta] : lambda_min(g, l, m))
          rhs += Matrix(fam.op(alpha) * Matrix(fam.op(beta).transpose()));
      if (!detail::same(Matrix(Matrix(a.transpose()) * b), rhs)) r3.fail(g.format(l) + ", " + g.format(m));
    }
  for (auto v : g.vertices()) {
    const Matrix& p = fam.op(g.vertex(v));
    for (auto& e : fe_sets(g, v)) {
      Matrix prod = p;
      for (auto& l : e) {
        const Matrix& t = fam.op(l);
        prod = Matrix(prod * Matrix(p - Matrix(t * Matrix(t.transpose()))));
      }
      ++ck.instances;
      if (!detail::is_zero(prod)) {
        std::string s = "v=" + g.vertex_name(v) + " E={";
        for (auto& l : e) s += g.format(l) + " ";
        ck.fail(s + "}");
      }
    }
  }
  return {pi, srcproj, r1, r2, r3, nonzero, ck};
}

}  // namespace kgraph

#endif
