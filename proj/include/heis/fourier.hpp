#pragma once

// Discrete Fourier analysis on Z and on periodic sequences.
//
// Conventions:
//   dft:          h^_k = sum_{i=0}^{N-1} h_i conj(w)^{ik},  w = exp(2 pi i / N)
//   inverse_dft:  h_i  = (1/N) sum_k h^_k w^{ik}
//   transform on Z: f^(xi) = sum_k f(k) exp(-2 pi i k xi), xi in [0, 1)
//
// The discrete Sobolev norm of order alpha is
//   ||f||_alpha = ( int_0^1 |(1 + |1 - e^{-2 pi i xi}|)^alpha f^(xi)|^2 dxi )^{1/2}
// evaluated with |1 - e^{-2 pi i xi}| = 2 sin(pi xi) on [0, 1].

#include <complex>
#include <functional>
#include <vector>

#include "heis/coefficient_field.hpp"

namespace heis {

class PeriodicSequence {
 public:
  explicit PeriodicSequence(std::vector<Complex> values);

  std::size_t period() const noexcept { return values_.size(); }
  const std::vector<Complex>& values() const noexcept { return values_; }
  Complex operator[](std::size_t i) const { return values_[i]; }

  double l2_norm() const;

 private:
  std::vector<Complex> values_;
};

PeriodicSequence dft(const PeriodicSequence& h);
PeriodicSequence inverse_dft(const PeriodicSequence& c);

/// (Delta h)_i = h_i - h_{i-1 mod N}.
PeriodicSequence periodic_difference(const PeriodicSequence& h);

/// (Delta f)(k) = f(k) - f(k-1) on a finitely supported f : Z -> C.
/// Entries that cancel to exactly zero are dropped.
CoefficientField difference(const CoefficientField& f);

/// f^(xi) = sum_k f(k) exp(-2 pi i k xi) for dim-1 f.
Complex fourier_transform(const CoefficientField& f, double xi);

/// Discrete Sobolev norm on Z. Throws DomainError for alpha < 0.
double sobolev_norm(const CoefficientField& f, double alpha);

/// A compactly supported function on R, known through a callable. The
/// breakpoints mark points where it may fail to be smooth; quadrature
/// panels never straddle them.
struct Spectrum {
  double lo = 0.0;
  double hi = 0.0;
  std::function<Complex(double)> values;
  std::vector<double> breakpoints;
};

/// Piecewise-linear interpolant through equispaced samples on [lo, hi],
/// zero outside. Needs at least two samples.
Spectrum sampled_spectrum(double lo, double hi, std::vector<Complex> samples);

/// Ratio of the two sides of the lattice-restriction inequality for
/// g = f|_Z, where f has Fourier transform fhat:
///   lhs^2 = int_0^1 (1 + 2 R sin(pi t))^{2 alpha} |sum_j fhat(t + j)|^2 dt
///   rhs^2 = int_R (1 + 2 pi R |xi|)^{2 alpha} |fhat(xi)|^2 dxi
/// The ratio is an empirical lower bound on the constant. Returns 0 when
/// fhat vanishes. Throws DomainError unless alpha > 1/2 and R >= eps >= 0.
double restriction_ratio(const Spectrum& fhat, double alpha, double R, double eps);

struct RestrictionSides {
  double lhs = 0.0;
  double rhs = 0.0;
};
RestrictionSides restriction_sides(const Spectrum& fhat, double alpha, double R, double eps);

/// Samples of a function on R^d.
struct SampledFunction {
  std::size_t dim = 0;
  std::vector<std::vector<double>> points;
  std::vector<Complex> values;
};

/// Groups points into shells of radius width tol and checks that every
/// shell is constant to within tol of its mean. Throws DegenerateInputError
/// when the grid is empty or no shell holds two points.
bool is_radial(const SampledFunction& f, double tol);

}  // namespace heis
