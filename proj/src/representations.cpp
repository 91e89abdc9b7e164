#include "heis/representations.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "heis/checked.hpp"
#include "heis/error.hpp"

namespace heis {

namespace ck = checked;

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t p) {
  std::int64_t q = a / p;
  if ((a % p != 0) && ((a < 0) != (p < 0))) --q;
  return q;
}

std::int64_t mod(std::int64_t a, std::int64_t p) {
  std::int64_t r = a % p;
  return r < 0 ? r + p : r;
}

std::int64_t mod128(__int128 a, std::int64_t p) {
  __int128 r = a % p;
  if (r < 0) r += p;
  return static_cast<std::int64_t>(r);
}

double frac(double t) { return t - std::floor(t); }

/// exp(2 pi i t), reduced mod 1 first.
Complex cis(double turns) { return std::polar(1.0, 2.0 * std::numbers::pi * frac(turns)); }

/// (n q mod p) / p, the exact fractional part of n * (q/p).
double eta_turns(std::int64_t n, const IrrepParams& P) {
  return static_cast<double>(mod128(static_cast<__int128>(n) * P.eta_numerator(), P.p())) /
         static_cast<double>(P.p());
}

Complex irrep_phase(const IrrepParams& P, const SemidirectElement& a, std::int64_t j) {
  const std::int64_t p = P.p();
  const __int128 kj = static_cast<__int128>(a.k) + static_cast<__int128>(j) * a.m;
  const double eta_part =
      static_cast<double>(mod128(kj * P.eta_numerator(), p)) / static_cast<double>(p);
  const std::int64_t wraps = floor_div(ck::add(a.s, j), p);
  return cis(frac(static_cast<double>(a.m) * P.xi()) + eta_part +
             frac(static_cast<double>(wraps) * P.alpha()));
}

}  // namespace

SemidirectElement star(const SemidirectElement& a, const SemidirectElement& b) {
  return {ck::add(a.m, b.m), ck::add(ck::add(a.k, b.k), ck::mul(b.m, a.s)), ck::add(a.s, b.s)};
}

SemidirectElement star_inverse(const SemidirectElement& a) {
  return {ck::neg(a.m), ck::add(ck::neg(a.k), ck::mul(a.m, a.s)), ck::neg(a.s)};
}

SemidirectElement star_left_m(const SemidirectElement& a, const SemidirectElement& b) {
  return {ck::add(a.m, b.m), ck::add(ck::add(a.k, b.k), ck::mul(a.m, b.s)), ck::add(a.s, b.s)};
}

SemidirectElement automorphism_phi(const SemidirectElement& a) {
  // m(m-1)/2 is exact: one of m, m-1 is even.
  const std::int64_t m = a.m;
  const std::int64_t tri = (m % 2 == 0) ? ck::mul(m / 2, ck::sub(m, 1)) : ck::mul(m, ck::sub(m, 1) / 2);
  return {ck::add(a.s, m), ck::add(ck::add(a.k, tri), ck::mul(a.s, m)), m};
}

IrrepParams::IrrepParams(std::int64_t p, double xi, std::int64_t eta_numerator, double alpha)
    : p_(p), xi_(xi), q_(eta_numerator), alpha_(alpha) {
  if (p < 1) throw DomainError("representation dimension p must be positive");
  if (q_ < 0 || q_ >= p_) throw DomainError("eta = q/p must lie in [0, 1)");
  if (!(xi >= 0.0 && xi < 1.0)) throw DomainError("xi must lie in [0, 1)");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in [0, 1)");
}

IrrepParams IrrepParams::with_eta(std::int64_t p, double xi, double eta, double alpha) {
  if (p < 1) throw DomainError("representation dimension p must be positive");
  const double scaled = eta * static_cast<double>(p);
  const double q = std::round(scaled);
  if (std::abs(scaled - q) > 1e-9)
    throw DomainError("eta * p must be an integer (eta = q/p)");
  return IrrepParams(p, xi, static_cast<std::int64_t>(q), alpha);
}

bool IrrepParams::irreducible() const { return std::gcd(q_, p_) == 1; }

ComplexMatrix::ComplexMatrix(std::size_t size) : size_(size), data_(size * size) {}

ComplexMatrix ComplexMatrix::identity(std::size_t size) {
  ComplexMatrix m(size);
  for (std::size_t i = 0; i < size; ++i) m(i, i) = 1.0;
  return m;
}

Complex ComplexMatrix::trace() const {
  Complex t{};
  for (std::size_t i = 0; i < size_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix a(size_);
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = 0; j < size_; ++j) a(j, i) = std::conj((*this)(i, j));
  return a;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.size() != b.size()) throw DimensionMismatchError("matrix sizes differ");
  const std::size_t n = a.size();
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) r(i, j) += a(i, k) * b(k, j);
  return r;
}

double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.size() != b.size()) throw DimensionMismatchError("matrix sizes differ");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

bool is_phase_permutation(const ComplexMatrix& u, double tol) {
  const std::size_t n = u.size();
  std::vector<int> col_count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    int row_count = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double mag = std::abs(u(i, j));
      if (mag == 0.0) continue;
      if (std::abs(mag - 1.0) > tol) return false;
      ++row_count;
      ++col_count[j];
    }
    if (row_count != 1) return false;
  }
  for (int c : col_count)
    if (c != 1) return false;
  return true;
}

ComplexMatrix irrep_matrix(const IrrepParams& P, const SemidirectElement& a) {
  const std::int64_t p = P.p();
  ComplexMatrix u(static_cast<std::size_t>(p));
  for (std::int64_t i = 0; i < p; ++i) {
    const std::int64_t j = mod(ck::sub(i, mod(a.s, p)), p);
    u(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = irrep_phase(P, a, j);
  }
  return u;
}

ComplexMatrix irrep_matrix_source_indexed(const IrrepParams& P, const SemidirectElement& a) {
  const std::int64_t p = P.p();
  ComplexMatrix u(static_cast<std::size_t>(p));
  for (std::int64_t j = 0; j < p; ++j) {
    const std::int64_t target = mod(ck::sub(j, mod(a.s, p)), p);
    u(static_cast<std::size_t>(target), static_cast<std::size_t>(j)) = irrep_phase(P, a, j);
  }
  return u;
}

Complex character(const IrrepParams& P, const SemidirectElement& a) {
  const std::int64_t p = P.p();
  if (mod(a.s, p) != 0 || mod(a.m, p) != 0) return {0.0, 0.0};
  const double turns = frac(static_cast<double>(a.m) * P.xi()) + eta_turns(a.k, P) +
                       frac(static_cast<double>(a.s / p) * P.alpha());
  return static_cast<double>(p) * cis(turns);
}

Complex twisted_character(const IrrepParams& P, const SemidirectElement& a) {
  return character(P, automorphism_phi(a));
}

Complex printed_twisted_character(const IrrepParams& P, const SemidirectElement& a) {
  const std::int64_t p = P.p();
  if (mod(a.s, p) != 0 || mod(a.m, p) != 0) return {0.0, 0.0};
  const std::int64_t m = a.m;
  const std::int64_t tri = (m % 2 == 0) ? ck::mul(m / 2, ck::sub(m, 1)) : ck::mul(m, ck::sub(m, 1) / 2);
  const std::int64_t inner = ck::add(ck::add(ck::neg(a.k), tri), ck::mul(a.s, m));
  const double turns = eta_turns(ck::add(a.s, m), P) + eta_turns(inner, P) +
                       frac(static_cast<double>(m) / static_cast<double>(p) * P.alpha());
  return static_cast<double>(p) * cis(turns);
}

std::pair<double, double> orbit_step(double xi, double eta, std::int64_t s) {
  return {frac(xi + static_cast<double>(s) * eta), eta};
}

std::pair<Fraction, Fraction> orbit_step(const Fraction& xi, const Fraction& eta, std::int64_t s) {
  if (xi.den <= 0 || eta.den <= 0) throw DomainError("fraction denominators must be positive");
  const __int128 den = static_cast<__int128>(xi.den) * eta.den;
  __int128 num = static_cast<__int128>(xi.num) * eta.den +
                 static_cast<__int128>(s) * eta.num * xi.den;
  num %= den;
  if (num < 0) num += den;
  __int128 a = num, b = den;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  const __int128 g = a == 0 ? 1 : a;
  const __int128 rn = num / g, rd = den / g;
  if (rd > INT64_MAX) throw OverflowError("orbit denominator exceeds 64 bits");
  return {Fraction{static_cast<std::int64_t>(rn), static_cast<std::int64_t>(rd)}, eta};
}

std::pair<std::int64_t, std::int64_t> act(const Element& g, std::int64_t n, std::int64_t k) {
  return {ck::add(n, g.y), ck::add(ck::add(k, g.z), ck::mul(g.x, n))};
}

LatticeFunction translate_rep(const Element& g, const LatticeFunction& f) {
  if (f.dim() != 2) throw DimensionMismatchError("lattice functions live on Z^2");
  LatticeFunction out(2);
  for (const auto& [s, v] : f) {
    auto [n, k] = act(g, s[0], s[1]);
    out.set({n, k}, v);
  }
  return out;
}

CoefficientField fourier_side_rep(const Element& g, const CoefficientField& c) {
  if (c.dim() != 2) throw DimensionMismatchError("expected coefficients of z^n w^k");
  CoefficientField out(2);
  for (const auto& [idx, v] : c) {
    // z^n w^k -> (z w^m')^n w^k z^n' w^k'
    const std::int64_t zdeg = ck::add(idx[0], g.y);
    const std::int64_t wdeg = ck::add(ck::add(ck::mul(g.x, idx[0]), idx[1]), g.z);
    out.add({zdeg, wdeg}, v);
  }
  return out;
}

namespace {

void require_unit(Complex w) {
  if (std::abs(std::abs(w) - 1.0) > 1e-12) throw DomainError("w must lie on the unit circle");
}

/// w^e for |w| = 1 via the argument, which keeps |w^e| = 1 for large e.
Complex unit_power(Complex w, std::int64_t e) {
  return std::polar(1.0, std::remainder(static_cast<double>(e) * std::arg(w), 2.0 * std::numbers::pi));
}

}  // namespace

CoefficientField mult_rep(const Element& g, const CoefficientField& c, Complex w) {
  require_unit(w);
  if (c.dim() != 1) throw DimensionMismatchError("mult_rep acts on one-variable polynomials");
  CoefficientField out(1);
  const Complex global = unit_power(w, g.z);
  for (const auto& [idx, v] : c) {
    const std::int64_t d = idx[0];
    out.add({ck::add(d, g.y)}, v * unit_power(w, ck::mul(g.x, d)) * global);
  }
  return out;
}

CoefficientField fibre_at(const CoefficientField& c, Complex w) {
  require_unit(w);
  if (c.dim() != 2) throw DimensionMismatchError("expected coefficients of z^n w^k");
  CoefficientField out(1);
  for (const auto& [idx, v] : c) out.add({idx[0]}, v * unit_power(w, idx[1]));
  return out;
}

Complex evaluate_laurent(const CoefficientField& c, Complex z) {
  if (c.dim() != 1) throw DimensionMismatchError("expected a one-variable polynomial");
  Complex acc{};
  for (const auto& [idx, v] : c) acc += v * std::pow(z, static_cast<double>(idx[0]));
  return acc;
}

}  // namespace heis
