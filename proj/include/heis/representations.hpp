#pragma once

// Unitary representations of the discrete Heisenberg group.
//
//  * translate_rep: H_1 acting on finitely supported functions on Z^2 through
//    g.(n, k) = (n + n', k + k' + m' n) for g = (m', n', k').
//  * fourier_side_rep / mult_rep: the same representation conjugated to the
//    torus, f(z, w) -> f(z w^m', w) z^n' w^k', and its fibre at a fixed w.
//  * irrep_matrix / character: the p-dimensional phase-permutation
//    representations of Z^2 x| Z with parameters (xi, eta = q/p, alpha).

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "heis/coefficient_field.hpp"
#include "heis/group.hpp"

namespace heis {

/// ((m, k), s) in Z^2 x| Z.
struct SemidirectElement {
  std::int64_t m = 0;
  std::int64_t k = 0;
  std::int64_t s = 0;

  friend bool operator==(const SemidirectElement&, const SemidirectElement&) = default;
};

/// ((m + m', k + k' + m' s), s + s'): the left s acts on the right m'.
SemidirectElement star(const SemidirectElement& a, const SemidirectElement& b);
SemidirectElement star_inverse(const SemidirectElement& a);

/// The alternative reading of the printed cocycle, ((m + m', k + k' + m s'), s + s').
/// Kept for the convention probe only.
SemidirectElement star_left_m(const SemidirectElement& a, const SemidirectElement& b);

/// phi((m, k), s) = ((s + m, k + m(m-1)/2 + s m), m).
SemidirectElement automorphism_phi(const SemidirectElement& a);

/// Parameters of a p-dimensional representation. eta is the rational q/p.
class IrrepParams {
 public:
  IrrepParams(std::int64_t p, double xi, std::int64_t eta_numerator, double alpha);

  /// Builds eta_numerator = round(eta * p); eta * p must be an integer to 1e-9.
  static IrrepParams with_eta(std::int64_t p, double xi, double eta, double alpha);

  std::int64_t p() const noexcept { return p_; }
  double xi() const noexcept { return xi_; }
  std::int64_t eta_numerator() const noexcept { return q_; }
  double eta() const noexcept { return static_cast<double>(q_) / static_cast<double>(p_); }
  double alpha() const noexcept { return alpha_; }

  /// gcd(q, p) == 1: the orbit of (xi, eta) has p points and the
  /// representation is irreducible.
  bool irreducible() const;

 private:
  std::int64_t p_;
  double xi_;
  std::int64_t q_;
  double alpha_;
};

/// Dense p x p complex matrix, row-major.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(std::size_t size);
  static ComplexMatrix identity(std::size_t size);

  std::size_t size() const noexcept { return size_; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * size_ + c]; }
  Complex operator()(std::size_t r, std::size_t c) const { return data_[r * size_ + c]; }

  Complex trace() const;
  ComplexMatrix adjoint() const;

 private:
  std::size_t size_;
  std::vector<Complex> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b);

/// True when every row and column has exactly one nonzero entry and those
/// entries have modulus 1 within tol.
bool is_phase_permutation(const ComplexMatrix& u, double tol);

/// Column i is sent to row j = (i - s) mod p with phase
/// exp(2 pi i (m xi + (k + j m) eta + floor((s + j) / p) alpha)).
/// The phase is indexed by the target basis vector, which is what makes
/// rho(a * b) = rho(a) rho(b) hold exactly.
ComplexMatrix irrep_matrix(const IrrepParams& params, const SemidirectElement& a);

/// Literal basis-action reading eps_j -> phase(j) eps_{(j - s) mod p}, with the
/// phase indexed by the source vector. Not a homomorphism; probe only.
ComplexMatrix irrep_matrix_source_indexed(const IrrepParams& params, const SemidirectElement& a);

/// p exp(2 pi i (m xi + k eta + (s/p) alpha)) when p | s and p | m, else 0.
/// Equal to the trace of irrep_matrix whenever params.irreducible().
Complex character(const IrrepParams& params, const SemidirectElement& a);

/// character(params, automorphism_phi(a)).
Complex twisted_character(const IrrepParams& params, const SemidirectElement& a);

/// The twisted character formula as printed:
/// p exp(2 pi i ((s+m) eta + (-k + m(m-1)/2 + s m) eta + (m/p) alpha)) when
/// p | s and p | m, else 0. Probe only.
Complex printed_twisted_character(const IrrepParams& params, const SemidirectElement& a);

/// (frac(xi + s eta), eta).
std::pair<double, double> orbit_step(double xi, double eta, std::int64_t s);

/// Exact rational orbit step; xi and eta given as numerator/denominator pairs.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
  friend bool operator==(const Fraction&, const Fraction&) = default;
};
std::pair<Fraction, Fraction> orbit_step(const Fraction& xi, const Fraction& eta, std::int64_t s);

/// Lattice functions on Z^2 are dim-2 coefficient fields.
using LatticeFunction = CoefficientField;

/// (U_g f)(n, k) = f(g^-1 . (n, k)).
LatticeFunction translate_rep(const Element& g, const LatticeFunction& f);

/// The action g.(n, k) = (n + n', k + k' + m' n) for g = (m', n', k').
std::pair<std::int64_t, std::int64_t> act(const Element& g, std::int64_t n, std::int64_t k);

/// F^-1 U_g F on Fourier coefficients c(n, k) of z^n w^k:
/// f(z, w) -> f(z w^m', w) z^n' w^k'.
CoefficientField fourier_side_rep(const Element& g, const CoefficientField& c);

/// Fibre of fourier_side_rep at |w| = 1 on a one-variable Laurent polynomial
/// in z: f(z) -> f(z w^m') z^n' w^k'. Throws DomainError when |w| != 1.
CoefficientField mult_rep(const Element& g, const CoefficientField& c, Complex w);

/// Restricts a two-variable Laurent polynomial in (z, w) to a fixed w.
CoefficientField fibre_at(const CoefficientField& c, Complex w);

/// Evaluates a one-variable Laurent polynomial at z.
Complex evaluate_laurent(const CoefficientField& c, Complex z);

}  // namespace heis
