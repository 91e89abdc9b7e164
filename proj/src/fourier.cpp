#include "heis/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>

#include "heis/error.hpp"

namespace heis {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<Complex> run_fftw(const std::vector<Complex>& in, int sign) {
  const int n = static_cast<int>(in.size());
  auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * in.size()));
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < in.size(); ++i) {
    buf[i][0] = in[i].real();
    buf[i][1] = in[i].imag();
  }
  fftw_execute(plan);
  std::vector<Complex> out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = {buf[i][0], buf[i][1]};
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(buf);
  return out;
}

/// Sums in a fixed pairwise tree so the result does not depend on how the
/// terms were produced.
double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

using Gauss = boost::math::quadrature::gauss<double, 20>;

/// Composite 20-point Gauss-Legendre over [a, b] with `panels` equal panels.
template <typename F>
double composite(F&& f, double a, double b, std::size_t panels) {
  if (!(b > a)) return 0.0;
  std::vector<double> parts(panels);
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t i = 0; i < panels; ++i) {
    const double x0 = a + h * static_cast<double>(i);
    const double x1 = (i + 1 == panels) ? b : x0 + h;
    parts[i] = Gauss::integrate(f, x0, x1);
  }
  return pairwise_sum(parts, 0, parts.size());
}

/// Integrates over [a, b] split at the sorted breakpoints, with panels no
/// wider than 1/panels_per_unit.
template <typename F>
double integrate_between(F&& f, std::vector<double> cuts, double a, double b,
                         double panels_per_unit) {
  cuts.push_back(a);
  cuts.push_back(b);
  std::erase_if(cuts, [&](double c) { return c < a || c > b; });
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<double> parts;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double len = cuts[i + 1] - cuts[i];
    const auto panels = static_cast<std::size_t>(std::ceil(len * panels_per_unit));
    parts.push_back(composite(f, cuts[i], cuts[i + 1], std::max<std::size_t>(1, panels)));
  }
  return pairwise_sum(parts, 0, parts.size());
}

}  // namespace

PeriodicSequence::PeriodicSequence(std::vector<Complex> values) : values_(std::move(values)) {
  if (values_.empty()) throw DomainError("periodic sequence needs period >= 1");
}

double PeriodicSequence::l2_norm() const {
  double s = 0.0;
  for (auto v : values_) s += std::norm(v);
  return std::sqrt(s);
}

PeriodicSequence dft(const PeriodicSequence& h) {
  return PeriodicSequence(run_fftw(h.values(), FFTW_FORWARD));
}

PeriodicSequence inverse_dft(const PeriodicSequence& c) {
  auto out = run_fftw(c.values(), FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (auto& v : out) v *= scale;
  return PeriodicSequence(std::move(out));
}

PeriodicSequence periodic_difference(const PeriodicSequence& h) {
  const std::size_t n = h.period();
  std::vector<Complex> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = h[i] - h[(i + n - 1) % n];
  return PeriodicSequence(std::move(out));
}

CoefficientField difference(const CoefficientField& f) {
  if (f.dim() != 1) throw DimensionMismatchError("difference acts on sequences over Z");
  CoefficientField out(1);
  for (const auto& [k, v] : f) {
    out.add(k, v);
    if (k[0] == INT64_MAX) throw OverflowError("index k + 1 overflows");
    out.add({k[0] + 1}, -v);
  }
  CoefficientField pruned(1);
  for (const auto& [k, v] : out)
    if (v != Complex{}) pruned.set(k, v);
  return pruned;
}

namespace {

/// Shifted evaluation: |f^| does not depend on the reference index, and a
/// centred reference keeps the phase arguments small.
Complex transform_about(const CoefficientField& f, double xi, std::int64_t ref) {
  Complex acc{};
  for (const auto& [k, v] : f) {
    const double t = static_cast<double>(k[0] - ref) * xi;
    acc += v * std::polar(1.0, -kTwoPi * (t - std::round(t)));
  }
  return acc;
}

}  // namespace

Complex fourier_transform(const CoefficientField& f, double xi) {
  if (f.dim() != 1) throw DimensionMismatchError("transform of a sequence over Z");
  return transform_about(f, xi, 0);
}

double sobolev_norm(const CoefficientField& f, double alpha) {
  if (f.dim() != 1) throw DimensionMismatchError("Sobolev norm of a sequence over Z");
  if (!(alpha >= 0.0)) throw DomainError("Sobolev order alpha must be nonnegative");
  if (f.empty()) return 0.0;
  const std::int64_t lo = f.begin()->first[0];
  const std::int64_t hi = std::prev(f.end())->first[0];
  const std::int64_t ref = lo + (hi - lo) / 2;
  // |f^|^2 is a trigonometric polynomial of degree hi - lo; one 20-point
  // panel per unit of degree resolves it far beyond double precision.
  const auto panels = static_cast<std::size_t>(std::max<std::int64_t>(8, hi - lo + 1));
  auto integrand = [&](double xi) {
    const double weight = std::pow(1.0 + 2.0 * std::sin(std::numbers::pi * xi), 2.0 * alpha);
    return weight * std::norm(transform_about(f, xi, ref));
  };
  return std::sqrt(composite(integrand, 0.0, 1.0, panels));
}

Spectrum sampled_spectrum(double lo, double hi, std::vector<Complex> samples) {
  if (samples.size() < 2) throw DomainError("sampled spectrum needs at least two samples");
  if (!(hi > lo)) throw DomainError("sampled spectrum needs lo < hi");
  const double step = (hi - lo) / static_cast<double>(samples.size() - 1);
  Spectrum s;
  s.lo = lo;
  s.hi = hi;
  for (std::size_t i = 0; i < samples.size(); ++i) s.breakpoints.push_back(lo + step * static_cast<double>(i));
  s.values = [lo, hi, step, samples = std::move(samples)](double x) -> Complex {
    if (x < lo || x > hi) return {};
    double pos = (x - lo) / step;
    auto i = static_cast<std::size_t>(std::floor(pos));
    if (i + 1 >= samples.size()) return samples.back();
    const double t = pos - static_cast<double>(i);
    return (1.0 - t) * samples[i] + t * samples[i + 1];
  };
  return s;
}

RestrictionSides restriction_sides(const Spectrum& fhat, double alpha, double R, double eps) {
  if (!(alpha > 0.5)) throw DomainError("restriction inequality needs alpha > 1/2");
  if (!(eps >= 0.0) || !(R >= eps)) throw DomainError("restriction inequality needs R >= eps >= 0");
  if (!(fhat.hi >= fhat.lo)) throw DomainError("spectrum support must satisfy lo <= hi");
  if (!fhat.values) return {};

  constexpr double kPanelsPerUnit = 256.0;
  const double lo = fhat.lo, hi = fhat.hi;

  auto rhs_integrand = [&](double xi) {
    const double w = std::pow(1.0 + kTwoPi * R * std::abs(xi), 2.0 * alpha);
    return w * std::norm(fhat.values(xi));
  };
  std::vector<double> rhs_cuts = fhat.breakpoints;
  rhs_cuts.push_back(0.0);
  const double rhs2 = integrate_between(rhs_integrand, rhs_cuts, lo, hi, kPanelsPerUnit);

  // Poisson summation: the transform of f|_Z is the 1-periodization of fhat.
  auto periodized = [&](double t) {
    Complex acc{};
    const auto j0 = static_cast<std::int64_t>(std::ceil(lo - t));
    const auto j1 = static_cast<std::int64_t>(std::floor(hi - t));
    for (std::int64_t j = j0; j <= j1; ++j) acc += fhat.values(t + static_cast<double>(j));
    return acc;
  };
  auto lhs_integrand = [&](double t) {
    const double w = std::pow(1.0 + 2.0 * R * std::sin(std::numbers::pi * t), 2.0 * alpha);
    return w * std::norm(periodized(t));
  };
  std::vector<double> lhs_cuts;
  auto wrap = [](double x) { return x - std::floor(x); };
  for (double b : fhat.breakpoints) lhs_cuts.push_back(wrap(b));
  lhs_cuts.push_back(wrap(lo));
  lhs_cuts.push_back(wrap(hi));
  const double lhs2 = integrate_between(lhs_integrand, lhs_cuts, 0.0, 1.0, kPanelsPerUnit);

  return {std::sqrt(std::max(0.0, lhs2)), std::sqrt(std::max(0.0, rhs2))};
}

double restriction_ratio(const Spectrum& fhat, double alpha, double R, double eps) {
  const auto sides = restriction_sides(fhat, alpha, R, eps);
  if (sides.rhs == 0.0) return 0.0;
  return sides.lhs / sides.rhs;
}

bool is_radial(const SampledFunction& f, double tol) {
  if (f.points.empty()) throw DegenerateInputError("radiality test on an empty grid");
  if (f.points.size() != f.values.size())
    throw DimensionMismatchError("points and values differ in count");
  if (!(tol >= 0.0)) throw DomainError("tolerance must be nonnegative");
  std::vector<double> radius(f.points.size());
  for (std::size_t i = 0; i < f.points.size(); ++i) {
    if (f.points[i].size() != f.dim) throw DimensionMismatchError("grid point of wrong dimension");
    double r2 = 0.0;
    for (double c : f.points[i]) r2 += c * c;
    radius[i] = std::sqrt(r2);
  }
  std::vector<std::size_t> order(radius.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return radius[a] < radius[b]; });

  bool any_shell = false;
  bool radial = true;
  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t end = start + 1;
    while (end < order.size() && radius[order[end]] - radius[order[start]] <= tol) ++end;
    if (end - start >= 2) {
      any_shell = true;
      Complex mean{};
      for (std::size_t i = start; i < end; ++i) mean += f.values[order[i]];
      mean /= static_cast<double>(end - start);
      for (std::size_t i = start; i < end; ++i)
        if (std::abs(f.values[order[i]] - mean) > tol) radial = false;
    }
    start = end;
  }
  if (!any_shell) throw DegenerateInputError("no radius shell holds two grid points");
  return radial;
}

}  // namespace heis
