#pragma once

// The cohomological equation f - f o gamma = g for a translation gamma of the
// torus T^n by u, solved on Fourier coefficients:
//
//   (1 - e^{2 pi i <k, u>}) f_k = g_k,   f_0 = 0.
//
// The factor corresponds to f o gamma (x) = f(x + u). Setting sign = -1 in
// the options solves with f(x - u) instead, i.e. with u replaced by -u.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heis/coefficient_field.hpp"
#include "heis/diophantine.hpp"
#include "heis/precision_real.hpp"

namespace heis {

struct CoboundaryOptions {
  double resonance_tol = 1e-12;
  /// +1 for f o gamma (x) = f(x + u), -1 for f(x - u).
  int sign = 1;
  /// Entries of g beyond this max-norm are dropped; negative keeps all.
  std::int64_t truncation_radius = -1;
  /// When set, u is classified over 0 < |k| <= classify_kmax and a
  /// Liouville verdict marks the solution as formal.
  std::optional<std::int64_t> classify_kmax;
  /// Residual evaluation is skipped when grid points x support terms
  /// exceed this budget.
  double residual_budget = 5e7;
};

struct CoboundaryProblem {
  CoefficientField g;
  std::vector<PrecisionReal> u;
  CoboundaryOptions options;
};

struct TruncationRow {
  std::int64_t radius = 0;
  double norm = 0.0;
};

struct CoboundaryDiagnostics {
  /// Smallest divisor over the nonzero support of g; +inf when there is none.
  double min_divisor = 0.0;
  MultiIndex argmin_k;
  /// sup |f(x) - f o gamma (x) - g(x)| on the residual grid; empty when the
  /// grid would exceed the budget.
  std::optional<double> residual_sup;
  std::int64_t residual_grid = 0;
  double f_l2 = 0.0;
  double g_l2 = 0.0;
  /// Near-resonant modes whose g_k was below tolerance and were set to 0.
  std::size_t dropped_modes = 0;
  std::optional<Verdict> regime;
  /// Set in the Liouville regime.
  bool formal = false;
  std::string note;
  /// Weighted norms (alpha = 1) of f truncated to dyadic radii.
  std::vector<TruncationRow> truncation_norms;
};

struct CoboundarySolution {
  CoefficientField f;
  CoboundaryDiagnostics diagnostics;
};

/// The coefficient g_0: g can only be a coboundary when it vanishes.
Complex obstruction(const CoefficientField& g);

/// Throws NonzeroMeanError when |g_0| > resonance_tol, ResonanceError when a
/// mode with divisor <= tol (exactly zero for rational u) carries
/// |g_k| > tol, PrecisionError when a divisor is not resolvable, and
/// DimensionMismatchError when u and g disagree in dimension.
CoboundarySolution solve(const CoboundaryProblem& problem);

/// g_k = (1 - e^{2 pi i sign <k, u>}) f_k, so g_0 = 0.
CoefficientField coboundary_from(const CoefficientField& f, const std::vector<PrecisionReal>& u,
                                 int sign = 1);

/// max |f(x) - f o gamma (x) - g(x)| over the grid (Z/N)^n / N by direct
/// summation. Throws DomainError unless grid_size >= 2 R + 1 for the joint
/// support radius R.
double residual(const CoefficientField& f, const CoefficientField& g,
                const std::vector<PrecisionReal>& u, std::int64_t grid_size, int sign = 1);

/// (sum (1 + |k|)^{2 alpha} |f_k|^2)^{1/2} with the max-norm |k|.
double weighted_norm(const CoefficientField& f, double alpha);

/// weighted_norm of f truncated to radii 1, 2, 4, ... up to its support
/// radius (always ending at the support radius).
std::vector<TruncationRow> truncation_norms(const CoefficientField& f, double alpha);

/// A lower bound divisor(k) >= constant / |k|^s observed by classify.
struct DivisorEvidence {
  double s = 0.0;
  double constant = 0.0;
};

std::optional<DivisorEvidence> evidence_from(const ClassificationReport& report);

struct SobolevLossRow {
  double alpha = 0.0;
  double f_norm = 0.0;
  /// ||g|| at order alpha + s (s = 0 without evidence).
  double g_norm = 0.0;
  /// f_norm / g_norm, 0 when g_norm = 0.
  double ratio = 0.0;
  /// The discrete Sobolev norm on Z, for n = 1.
  std::optional<double> sequence_norm;
};

struct SobolevLoss {
  std::vector<SobolevLossRow> rows;
  std::optional<DivisorEvidence> evidence;
  /// Whether |f_k| C <= |g_k| |k|^s was checked and held for every k.
  bool bound_checked = false;
  bool bound_holds = false;
  /// Largest |f_k| C / (|g_k| |k|^s) seen and where.
  double worst_bound_ratio = 0.0;
  MultiIndex worst_k;
  std::string note;
};

SobolevLoss sobolev_loss(const CoboundarySolution& solution, const CoefficientField& g,
                         const std::vector<double>& alphas,
                         const std::optional<DivisorEvidence>& evidence);

}  // namespace heis
