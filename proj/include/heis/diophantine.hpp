#pragma once

// Small divisors |1 - exp(2 pi i <k, t>)| of a translation vector t, their
// empirical Diophantine / Liouville classification, continued fractions,
// and membership in the discrete Heisenberg fan.
//
// |k| is the max-norm throughout. Scans visit only the canonical half of
// Z^n \ {0} (first nonzero coordinate positive): the divisor is even in k.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "heis/coefficient_field.hpp"
#include "heis/precision_real.hpp"

namespace heis {

/// The reduced phase theta = <k, t> mod 1 in [-1/2, 1/2).
struct Phase {
  long double theta = 0.0L;
  /// Absolute error bound on theta; 0 for exact input.
  long double error = 0.0L;
  bool exact = false;
};

/// Evaluates <k, t> mod 1 for many k against a fixed t. Exact rationals use
/// integer arithmetic modulo the common denominator; approximations use a
/// fixed-point fraction wide enough for the requested precision, so the only
/// error is the input error scaled by |k|_1.
class PhaseEvaluator {
 public:
  explicit PhaseEvaluator(const std::vector<PrecisionReal>& t);
  ~PhaseEvaluator();

  std::size_t dim() const noexcept;
  bool exact() const noexcept;
  unsigned precision_bits() const noexcept;

  Phase phase(std::span<const std::int64_t> k) const;

  /// Phases of k for k = 1..count when dim() == 1, by exact accumulation
  /// (one addition per step). Calls visit(k, phase) in increasing k.
  void sweep_line(std::int64_t count,
                  const std::function<void(std::int64_t, const Phase&)>& visit) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// 2 |sin(pi theta)|. Throws PrecisionError when an inexact theta cannot be
/// separated from zero with ~20 bits of relative accuracy.
double resolved_divisor(const Phase& phase);

/// |1 - exp(2 pi i <k, t>)| computed as 2 |sin(pi <k, t>)|. Throws
/// DomainError for k = 0 and DimensionMismatchError for a length mismatch.
double small_divisor(const std::vector<PrecisionReal>& t, const MultiIndex& k);

/// 1 - exp(2 pi i theta) from a reduced phase, accurate to full relative
/// precision even for tiny theta.
Complex divisor_factor(long double theta);

struct ContinuedFraction {
  std::vector<BigInt> quotients;
  /// True when an exact rational was expanded completely.
  bool terminated = false;

  /// p_j / q_j for each prefix of the quotients.
  std::vector<std::pair<BigInt, BigInt>> convergents() const;
};

/// Up to `depth` partial quotients a_0; a_1, ... . For approximate input the
/// expansion is carried on both ends of the error interval and a
/// PrecisionError is raised as soon as they disagree.
ContinuedFraction continued_fraction(const PrecisionReal& x, std::size_t depth);

enum class Verdict { kRational, kDiophantineEvidence, kLiouvilleEvidence, kInconclusive };

std::string_view verdict_name(Verdict v);

struct DivisorRecord {
  MultiIndex k;
  double divisor = 0.0;
  double norm = 0.0;
  /// Reduced phase <k, t> mod 1.
  double phase = 0.0;
};

struct ExponentRow {
  double s = 0.0;
  /// C(s) = min over the scan of |k|^s * divisor(k).
  double constant = 0.0;
  MultiIndex argmin;
  /// min of |k|^s * divisor over each dyadic block 2^b <= |k| < 2^{b+1}.
  std::vector<double> block_minima;
  /// No decay across the dyadic blocks: the minimum over the upper half of
  /// the blocks is at least a quarter of the minimum over the lower half.
  bool bounded = false;
};

struct Witness {
  DivisorRecord record;
  /// -log(divisor) / log|k|.
  double divisor_exponent = 0.0;
  /// 1 - log|theta| / log|k|; for n = 1 this is mu with |t - p/k| = k^-mu.
  double approximation_exponent = 0.0;
};

struct ClassificationReport {
  Verdict verdict = Verdict::kInconclusive;
  std::int64_t kmax = 0;
  unsigned precision_bits = 0;
  bool exact_input = false;
  std::size_t scanned = 0;
  /// One row per requested s, ascending.
  std::vector<ExponentRow> rows;
  /// k with |k| >= 2 and divisor <= |k|^-s at the largest s, in scan order
  /// (truncated to kMaxWitnesses; witness_count has the full count).
  std::vector<Witness> witnesses;
  std::size_t witness_count = 0;
  /// The smallest divisors seen, ascending.
  std::vector<DivisorRecord> smallest;
  /// First exact zero divisor, when the verdict is Rational.
  std::optional<DivisorRecord> zero;
  /// Set for DiophantineEvidence: the smallest bounded s and its C(s).
  std::optional<double> evidence_s;
  std::optional<double> evidence_constant;

  static constexpr std::size_t kMaxWitnesses = 64;
  static constexpr std::size_t kKeepSmallest = 8;
};

/// Scans 0 < |k| <= kmax. Verdicts are empirical evidence over the scanned
/// range, never proofs:
///   Rational            exact input and some divisor is exactly zero;
///   LiouvilleEvidence   some |k| >= 2 has divisor <= |k|^-s for the largest s;
///   DiophantineEvidence the smallest s whose row is bounded;
///   Inconclusive        otherwise.
ClassificationReport classify(const std::vector<PrecisionReal>& t, std::int64_t kmax,
                              std::vector<double> s_grid);

/// (lambda = 0 and xi >= 0) or xi = |lambda| (2j + n) for some j >= 0.
bool fan_member(std::int64_t lambda, std::int64_t xi, std::int64_t n);

}  // namespace heis
