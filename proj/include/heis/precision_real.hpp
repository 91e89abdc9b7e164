#pragma once

// Real numbers carried either exactly (rationals) or as an exact dyadic
// centre with a rigorous absolute error bound at a configurable binary
// precision. Rational inputs are never rounded.
//
// Textual forms accepted by parse():
//   integers and decimals ("3", "-0.25", "1.5e-3")   exact
//   fractions ("3/7")                                exact
//   golden   (sqrt(5) - 1) / 2
//   phi      (1 + sqrt(5)) / 2
//   sqrt(N)  for a nonnegative integer N (exact when N is a square)
//   liouville  sum_{j >= 1} 10^{-j!}
//   pi, e
// Any form may carry a leading '-'.

#include <boost/multiprecision/gmp.hpp>
#include <string>
#include <string_view>

namespace heis {

using BigInt = boost::multiprecision::mpz_int;
using BigRational = boost::multiprecision::mpq_rational;

class PrecisionReal {
 public:
  static constexpr unsigned kMinBits = 64;
  static constexpr unsigned kMaxBits = 1024;

  /// Exact rational. `bits` only records the working precision of the scan
  /// it will take part in.
  static PrecisionReal exact(BigRational value, unsigned bits = 128);

  /// Approximation known to lie within |value| * 2^(1 - bits) of the truth
  /// (or 2^-bits when value is 0). The centre is rounded to `bits` bits.
  static PrecisionReal approximate(const BigRational& value, unsigned bits);

  static PrecisionReal parse(std::string_view text, unsigned bits);

  bool is_exact() const noexcept { return exact_; }
  unsigned precision_bits() const noexcept { return bits_; }

  /// The exact rational (exact inputs) or the dyadic centre (approximations).
  const BigRational& center() const noexcept { return center_; }

  /// log2 of the absolute error bound; meaningless when is_exact().
  double error_log2() const noexcept { return error_log2_; }

  double to_double() const;

  /// Decimal rendering with enough digits for the precision.
  std::string to_string() const;

 private:
  PrecisionReal(BigRational center, bool exact, unsigned bits, double error_log2);

  BigRational center_;
  bool exact_;
  unsigned bits_;
  double error_log2_;
};

/// Throws DomainError outside [kMinBits, kMaxBits].
void require_precision(unsigned bits);

}  // namespace heis
