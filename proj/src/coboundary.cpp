#include "heis/coboundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "heis/error.hpp"
#include "heis/fourier.hpp"

namespace heis {

namespace {

constexpr long double kTwoPiL = 2.0L * 3.141592653589793238462643383279502884L;

Complex unit(long double turns) {
  const long double a = kTwoPiL * turns;
  return {static_cast<double>(std::cos(a)), static_cast<double>(std::sin(a))};
}

void check_sign(int sign) {
  if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
}

void check_dims(const CoefficientField& f, const std::vector<PrecisionReal>& u) {
  if (f.dim() != u.size())
    throw DimensionMismatchError("coefficients have dimension " + std::to_string(f.dim()) +
                                 ", translation vector has length " + std::to_string(u.size()));
}

bool is_zero(const MultiIndex& k) {
  return std::all_of(k.begin(), k.end(), [](std::int64_t v) { return v == 0; });
}

std::string format_k(const MultiIndex& k) {
  std::string s = "(";
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(k[i]);
  }
  return s + ")";
}

}  // namespace

Complex obstruction(const CoefficientField& g) { return g.at(MultiIndex(g.dim(), 0)); }

CoefficientField coboundary_from(const CoefficientField& f, const std::vector<PrecisionReal>& u,
                                 int sign) {
  check_sign(sign);
  check_dims(f, u);
  const PhaseEvaluator ev(u);
  CoefficientField g(f.dim());
  for (const auto& [k, v] : f) {
    if (is_zero(k)) continue;
    const Phase p = ev.phase(k);
    g.set(k, divisor_factor(sign * p.theta) * v);
  }
  return g;
}

CoboundarySolution solve(const CoboundaryProblem& problem) {
  const auto& opt = problem.options;
  check_sign(opt.sign);
  check_dims(problem.g, problem.u);
  if (!(opt.resonance_tol >= 0.0)) throw DomainError("resonance tolerance must be nonnegative");

  const CoefficientField g =
      opt.truncation_radius >= 0 ? problem.g.truncated(opt.truncation_radius) : problem.g;
  const Complex mean = obstruction(g);
  if (std::abs(mean) > opt.resonance_tol)
    throw NonzeroMeanError("g has nonzero mean " + std::to_string(std::abs(mean)) +
                           "; it is not a coboundary");

  const PhaseEvaluator ev(problem.u);
  CoboundarySolution sol{CoefficientField(g.dim()), {}};
  auto& diag = sol.diagnostics;
  diag.min_divisor = std::numeric_limits<double>::infinity();
  std::vector<MultiIndex> resonant;

  for (const auto& [k, gk] : g) {
    if (is_zero(k)) continue;
    const Phase p = ev.phase(k);
    const double div = resolved_divisor(p);
    if (div < diag.min_divisor) {
      diag.min_divisor = div;
      diag.argmin_k = k;
    }
    const bool near = ev.exact() ? div == 0.0 : div <= opt.resonance_tol;
    if (near) {
      if (std::abs(gk) > opt.resonance_tol)
        resonant.push_back(k);
      else
        ++diag.dropped_modes;
      continue;
    }
    sol.f.set(k, gk / divisor_factor(opt.sign * p.theta));
  }
  if (!resonant.empty()) {
    std::string list;
    for (const auto& k : resonant) list += (list.empty() ? "" : " ") + format_k(k);
    throw ResonanceError("resonant modes with nonzero coefficient: " + list, std::move(resonant));
  }

  diag.f_l2 = sol.f.l2_norm();
  diag.g_l2 = g.l2_norm();

  const std::int64_t radius = std::max(sol.f.support_radius(), g.support_radius());
  const std::int64_t grid = 2 * radius + 1;
  const double points = std::pow(static_cast<double>(grid), static_cast<double>(g.dim()));
  const double terms = static_cast<double>(sol.f.size() + g.size());
  if (points * std::max(1.0, terms) <= opt.residual_budget) {
    diag.residual_sup = residual(sol.f, g, problem.u, grid, opt.sign);
    diag.residual_grid = grid;
  }

  if (opt.classify_kmax) {
    const auto report = classify(problem.u, *opt.classify_kmax, {1.0, 2.0});
    diag.regime = report.verdict;
    if (report.verdict == Verdict::kLiouvilleEvidence) {
      diag.formal = true;
      diag.note = "formal - norm may diverge under truncation growth";
      diag.truncation_norms = truncation_norms(sol.f, 1.0);
    }
  }
  return sol;
}

double residual(const CoefficientField& f, const CoefficientField& g,
                const std::vector<PrecisionReal>& u, std::int64_t grid_size, int sign) {
  check_sign(sign);
  check_dims(f, u);
  check_dims(g, u);
  const std::int64_t radius = std::max(f.support_radius(), g.support_radius());
  if (grid_size < 2 * radius + 1)
    throw DomainError("residual grid of size " + std::to_string(grid_size) +
                      " undersamples support radius " + std::to_string(radius));

  const std::size_t n = f.dim();
  const PhaseEvaluator ev(u);

  // f(x) - f(x + sign u) - g(x) = sum_k c_k e^{2 pi i <k, x>}
  // with c_k = f_k (1 - e^{2 pi i sign <k,u>}) - g_k.
  struct Term {
    MultiIndex k;
    Complex f_coef;
    Complex shifted;
    Complex g_coef;
  };
  std::vector<Term> terms;
  for (const auto& [k, v] : f) {
    const Phase p = ev.phase(k);
    terms.push_back({k, v, v * unit(sign * p.theta), {}});
  }
  for (const auto& [k, v] : g) terms.push_back({k, {}, {}, v});

  double worst = 0.0;
  MultiIndex x(n, 0);
  for (;;) {
    Complex fx{}, fshift{}, gx{};
    for (const auto& t : terms) {
      // <k, x> / N reduced exactly modulo N.
      __int128 dot = 0;
      for (std::size_t i = 0; i < n; ++i) dot += static_cast<__int128>(t.k[i]) * x[i];
      dot %= grid_size;
      if (dot < 0) dot += grid_size;
      const Complex e = unit(static_cast<long double>(static_cast<std::int64_t>(dot)) /
                             static_cast<long double>(grid_size));
      fx += t.f_coef * e;
      fshift += t.shifted * e;
      gx += t.g_coef * e;
    }
    worst = std::max(worst, std::abs(fx - fshift - gx));

    std::size_t i = 0;
    while (i < n && ++x[i] == grid_size) x[i++] = 0;
    if (i == n) break;
  }
  return worst;
}

double weighted_norm(const CoefficientField& f, double alpha) {
  if (!(alpha >= 0.0)) throw DomainError("Sobolev order alpha must be nonnegative");
  double s = 0.0;
  for (const auto& [k, v] : f)
    s += std::pow(1.0 + static_cast<double>(max_norm(k)), 2.0 * alpha) * std::norm(v);
  return std::sqrt(s);
}

std::vector<TruncationRow> truncation_norms(const CoefficientField& f, double alpha) {
  std::vector<TruncationRow> rows;
  const std::int64_t top = f.support_radius();
  if (top == 0) return rows;
  for (std::int64_t r = 1; r < top; r *= 2) rows.push_back({r, weighted_norm(f.truncated(r), alpha)});
  rows.push_back({top, weighted_norm(f, alpha)});
  return rows;
}

std::optional<DivisorEvidence> evidence_from(const ClassificationReport& report) {
  if (report.verdict != Verdict::kDiophantineEvidence || !report.evidence_s ||
      !report.evidence_constant)
    return std::nullopt;
  return DivisorEvidence{*report.evidence_s, *report.evidence_constant};
}

SobolevLoss sobolev_loss(const CoboundarySolution& solution, const CoefficientField& g,
                         const std::vector<double>& alphas,
                         const std::optional<DivisorEvidence>& evidence) {
  const CoefficientField& f = solution.f;
  if (f.dim() != g.dim()) throw DimensionMismatchError("f and g differ in dimension");
  SobolevLoss out;
  out.evidence = evidence;
  const double s = evidence ? evidence->s : 0.0;
  for (double a : alphas) {
    SobolevLossRow row;
    row.alpha = a;
    row.f_norm = weighted_norm(f, a);
    row.g_norm = weighted_norm(g, a + s);
    row.ratio = row.g_norm > 0.0 ? row.f_norm / row.g_norm : 0.0;
    if (f.dim() == 1) row.sequence_norm = sobolev_norm(f, a);
    out.rows.push_back(row);
  }

  if (!evidence) {
    out.note = "no divisor evidence; coefficient bound not checked";
    return out;
  }
  out.bound_checked = true;
  out.bound_holds = true;
  constexpr double kSlack = 1e-12;
  for (const auto& [k, fk] : f) {
    const double lhs = std::abs(fk) * evidence->constant;
    const double rhs = std::abs(g.at(k)) * std::pow(static_cast<double>(max_norm(k)), evidence->s);
    const double ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? INFINITY : 0.0);
    if (ratio > out.worst_bound_ratio || out.worst_k.empty()) {
      out.worst_bound_ratio = ratio;
      out.worst_k = k;
    }
    if (lhs > rhs * (1.0 + kSlack)) out.bound_holds = false;
  }
  return out;
}

}  // namespace heis
