#pragma once

// Integral cohomology H^k(H_n, Z) of the discrete Heisenberg group of
// dimension 2n + 1, from the closed formula by binomial differences.
//
// Summand conventions: Z_0 = Z (free part), Z_1 = 0 (dropped),
// Z_j = Z/jZ for j >= 2.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "heis/precision_real.hpp"

namespace heis {

/// C(a, b), zero when b < 0 or b > a (in particular for a < 0).
BigInt binom(std::int64_t a, std::int64_t b);

struct AbelianGroupDesc {
  BigInt free_rank = 0;
  /// j -> multiplicity, j >= 2, multiplicity >= 1, ascending j.
  std::map<std::int64_t, BigInt> torsion;

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const AbelianGroupDesc&) const = default;
};

/// A formula exponent that came out negative and was replaced by 0.
struct ClampEvent {
  std::int64_t n = 0;
  std::int64_t k = 0;
  /// 0 for the free summand of the middle and upper cases.
  std::int64_t j = 0;
  BigInt exponent = 0;
};

struct CohomologyResult {
  AbelianGroupDesc group;
  std::vector<ClampEvent> clamps;
};

/// Throws DomainError for n < 1 or k < 0.
CohomologyResult cohomology(std::int64_t n, std::int64_t k);

struct CohomologyTable {
  std::int64_t n = 0;
  /// Entries for k = 0 .. 2n + 2.
  std::vector<AbelianGroupDesc> groups;
  std::vector<ClampEvent> clamps;
  /// sum (-1)^k free_rank(k).
  BigInt euler_characteristic = 0;
  /// free_rank(k) == free_rank(2n + 1 - k) for 0 <= k <= 2n + 1.
  bool duality = false;
};

/// Throws DomainError unless 1 <= n <= 30.
CohomologyTable cohomology_table(std::int64_t n);

/// "2^3+5^1", or "0" without torsion.
std::string format_torsion(const AbelianGroupDesc& g);

}  // namespace heis
