#pragma once

// Exact arithmetic in the discrete Heisenberg group H_1 (upper unitriangular
// 3x3 integer matrices) and in its (2n+1)-dimensional lattice generalization.
//
// Conventions:
//   (x, y, z) is the matrix [[1, x, z], [0, 1, y], [0, 0, 1]], so the
//   product is (x + x', y + y', z + z' + x * y'), the cocycle pairing the
//   LEFT x with the RIGHT y.
//   g1 = (0,1,0), g2 = (1,0,0), g3 = (0,0,1) and (x,y,z) = g1^y g2^x g3^z.
//
// All arithmetic is checked; overflow raises OverflowError.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "heis/checked.hpp"

namespace heis {

struct Element {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;

  friend bool operator==(const Element&, const Element&) = default;
};

/// Exponents (a, b, c) of the word g1^a g2^b g3^c.
struct NormalForm {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

inline constexpr Element identity() { return {0, 0, 0}; }
inline constexpr Element g1() { return {0, 1, 0}; }
inline constexpr Element g2() { return {1, 0, 0}; }
inline constexpr Element g3() { return {0, 0, 1}; }

inline Element multiply(const Element& a, const Element& b) {
  namespace ck = checked;
  return {ck::add(a.x, b.x), ck::add(a.y, b.y), ck::add(ck::add(a.z, b.z), ck::mul(a.x, b.y))};
}

inline Element inverse(const Element& a) {
  namespace ck = checked;
  return {ck::neg(a.x), ck::neg(a.y), ck::add(ck::neg(a.z), ck::mul(a.x, a.y))};
}

/// a b a^-1 b^-1, expanded from the group law. Always (0, 0, a.x*b.y - b.x*a.y).
Element commutator(const Element& a, const Element& b);

/// a b a^-1. Fixes the center pointwise.
Element conjugate(const Element& a, const Element& b);

/// a^e by repeated squaring; negative exponents use the inverse.
Element power(const Element& a, std::int64_t e);

NormalForm normal_form(const Element& a);

/// Evaluates g1^a g2^b g3^c by group multiplication.
Element reconstruct(const NormalForm& nf);

bool is_central(const Element& a);

// Literal closed forms for the commutator and conjugation as they are usually
// printed. Probes only; nothing else calls them.
namespace printed {

/// [(x',y',z'), (x,y,z)] = (0, 0, y'z - z'y) as printed.
Element commutator(const Element& a, const Element& b);

/// (x',y',z')(x,y,z)(x,y,z)^-1 = (x', y', z + y'x - xy) as printed.
Element conjugate(const Element& a, const Element& b);

}  // namespace printed

struct ProbeOutcome {
  std::string name;
  Element group_law;
  Element printed;
  bool agrees = false;
};

/// Evaluates both probes on one pair: "conjugation" against a b a^-1 and
/// "commutator" against the group-law commutator.
std::vector<ProbeOutcome> probe_printed_formulas(const Element& a, const Element& b);

/// Element of the lattice Heisenberg group with x, y in Z^n, z in Z.
class ElementN {
 public:
  ElementN(std::vector<std::int64_t> x, std::vector<std::int64_t> y, std::int64_t z);
  static ElementN identity(std::size_t n);
  static ElementN from(const Element& e);

  std::size_t dim() const noexcept { return x_.size(); }
  const std::vector<std::int64_t>& x() const noexcept { return x_; }
  const std::vector<std::int64_t>& y() const noexcept { return y_; }
  std::int64_t z() const noexcept { return z_; }

  /// Only valid when dim() == 1.
  Element to_element() const;

  friend bool operator==(const ElementN&, const ElementN&) = default;

 private:
  std::vector<std::int64_t> x_;
  std::vector<std::int64_t> y_;
  std::int64_t z_;
};

/// sum_i a_i b_i, checked.
std::int64_t inner(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b);

/// (a.x + b.x, a.y + b.y, a.z + b.z + <a.x, b.y>).
ElementN multiply(const ElementN& a, const ElementN& b);
ElementN inverse(const ElementN& a);
ElementN commutator(const ElementN& a, const ElementN& b);

/// Dense row-major square integer matrix.
class IntMatrix {
 public:
  explicit IntMatrix(std::size_t size);
  static IntMatrix identity(std::size_t size);

  std::size_t size() const noexcept { return size_; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * size_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * size_ + c]; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t size_;
  std::vector<std::int64_t> data_;
};

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

/// (n+2)x(n+2) unitriangular embedding: first row (1, x_1..x_n, z), last
/// column (z, y_1..y_n, 1), identity block in between. Multiplicative.
IntMatrix matrix_embed(const ElementN& a);

// Text format: "x y z" for n = 1, "x1 .. xn | y1 .. yn | z" in general.
ElementN parse_element(std::string_view line, std::size_t line_number);
std::string format_element(const ElementN& a);
std::string format_element(const Element& a);

}  // namespace heis
