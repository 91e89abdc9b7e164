#pragma once

// Finitely supported maps Z^d -> C: trigonometric polynomials on the torus
// T^d, truncated Fourier series, and finitely supported lattice functions.
//
// File format (UTF-8 text):
//   dim=<d>
//   k1 ... kd re im
//   ...
// Entries are unordered; duplicate multi-indices are rejected. Blank lines
// and lines starting with '#' are ignored. Writers emit entries in
// lexicographic multi-index order.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

namespace heis {

using MultiIndex = std::vector<std::int64_t>;
using Complex = std::complex<double>;

/// max_i |k_i|.
std::int64_t max_norm(const MultiIndex& k);

class CoefficientField {
 public:
  using Map = std::map<MultiIndex, Complex>;

  explicit CoefficientField(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  /// Zero when k is outside the support.
  Complex at(const MultiIndex& k) const;
  bool contains(const MultiIndex& k) const { return entries_.count(k) != 0; }

  void set(MultiIndex k, Complex v);
  void add(MultiIndex k, Complex v);
  void erase(const MultiIndex& k) { entries_.erase(k); }

  Map::const_iterator begin() const { return entries_.begin(); }
  Map::const_iterator end() const { return entries_.end(); }

  /// Largest max-norm over the support; 0 for an empty field.
  std::int64_t support_radius() const;

  /// Keeps only entries with max-norm <= radius.
  CoefficientField truncated(std::int64_t radius) const;

  double l2_norm() const;
  double l1_norm() const;

 private:
  void check_dim(const MultiIndex& k) const;

  std::size_t dim_;
  Map entries_;
};

CoefficientField operator+(const CoefficientField& a, const CoefficientField& b);
CoefficientField operator*(Complex s, const CoefficientField& a);

/// max over the union of supports of |a_k - b_k|.
double max_abs_difference(const CoefficientField& a, const CoefficientField& b);

CoefficientField read_coefficients(std::istream& in);
void write_coefficients(std::ostream& out, const CoefficientField& f);

}  // namespace heis
