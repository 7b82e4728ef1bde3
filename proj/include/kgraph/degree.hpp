#ifndef KGRAPH_DEGREE_HPP
#define KGRAPH_DEGREE_HPP

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"

namespace kgraph {

// An element of N^k. The defaulted <=> is lexicographic and only meant for
// containers and output order; the product order is le().
class Degree {
 public:
  Degree() = default;
  explicit Degree(std::size_t k) : c_(k, 0) {}
  explicit Degree(std::vector<std::uint32_t> c) : c_(std::move(c)) {}
  Degree(std::initializer_list<std::uint32_t> c) : c_(c) {}

  static Degree unit(std::size_t k, std::size_t i) {
    Degree d(k);
    d.c_[i] = 1;
    return d;
  }
  static Degree filled(std::size_t k, std::uint32_t value) {
    return Degree(std::vector<std::uint32_t>(k, value));
  }

  std::size_t rank() const { return c_.size(); }
  std::uint32_t operator[](std::size_t i) const { return c_[i]; }
  std::uint32_t& operator[](std::size_t i) { return c_[i]; }
  const std::vector<std::uint32_t>& coords() const { return c_; }

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto x : c_) t += x;
    return t;
  }
  bool is_zero() const { return total() == 0; }

  bool le(const Degree& o) const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] > o.c_[i]) return false;
    return true;
  }

  Degree join(const Degree& o) const {
    Degree r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = std::max(c_[i], o.c_[i]);
    return r;
  }
  Degree meet(const Degree& o) const {
    Degree r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = std::min(c_[i], o.c_[i]);
    return r;
  }

  Degree operator+(const Degree& o) const {
    Degree r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
  }
  Degree operator-(const Degree& o) const {
    if (!o.le(*this))
      throw Error(Errc::DegreeOutOfRange, o.str() + " is not below " + str());
    Degree r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
  }
  Degree operator*(std::uint32_t s) const {
    Degree r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(c_[i]);
    }
    return s + ")";
  }

  friend bool operator==(const Degree&, const Degree&) = default;
  friend auto operator<=>(const Degree&, const Degree&) = default;

 private:
  std::vector<std::uint32_t> c_;
};

// All degrees n with 0 <= n <= bound, in lexicographic order.
inline std::vector<Degree> box(const Degree& bound) {
  std::vector<Degree> out;
  Degree cur(bound.rank());
  for (;;) {
    out.push_back(cur);
    std::size_t i = bound.rank();
    for (;;) {
      if (i == 0) return out;
      --i;
      if (cur[i] < bound[i]) {
        ++cur[i];
        break;
      }
      cur[i] = 0;
    }
  }
}

// Degrees in (N u {inf})^k; nullopt is infinity.
class XDegree {
 public:
  XDegree() = default;
  explicit XDegree(const Degree& d) {
    for (auto x : d.coords()) c_.emplace_back(x);
  }
  explicit XDegree(std::vector<std::optional<std::uint32_t>> c) : c_(std::move(c)) {}

  std::size_t rank() const { return c_.size(); }
  bool infinite(std::size_t i) const { return !c_[i].has_value(); }
  std::uint32_t at(std::size_t i) const { return *c_[i]; }
  bool all_finite() const {
    for (auto& x : c_)
      if (!x) return false;
    return true;
  }
  bool all_infinite() const {
    for (auto& x : c_)
      if (x) return false;
    return true;
  }

  bool contains(const Degree& n) const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] && n[i] > *c_[i]) return false;
    return true;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ',';
      s += c_[i] ? std::to_string(*c_[i]) : std::string("inf");
    }
    return s + ")";
  }

  friend bool operator==(const XDegree&, const XDegree&) = default;

 private:
  std::vector<std::optional<std::uint32_t>> c_;
};

}  // namespace kgraph

#endif
