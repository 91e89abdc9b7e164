#include "heis/cohomology.hpp"

#include "heis/error.hpp"

namespace heis {

BigInt binom(std::int64_t a, std::int64_t b) {
  if (b < 0 || a < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  BigInt r = 1;
  for (std::int64_t i = 1; i <= b; ++i) {
    r *= a - b + i;
    r /= i;
  }
  return r;
}

namespace {

class Builder {
 public:
  Builder(std::int64_t n, std::int64_t k) : n_(n), k_(k) {}

  /// Adds (Z_j)^e.
  void summand(std::int64_t j, BigInt e) {
    if (e < 0) {
      out_.clamps.push_back({n_, k_, j, e});
      return;
    }
    if (e == 0 || j == 1) return;
    if (j == 0)
      out_.group.free_rank += e;
    else
      out_.group.torsion[j] += e;
  }

  CohomologyResult take() && { return std::move(out_); }

 private:
  std::int64_t n_, k_;
  CohomologyResult out_;
};

}  // namespace

CohomologyResult cohomology(std::int64_t n, std::int64_t k) {
  if (n < 1) throw DomainError("n must be positive");
  if (k < 0) throw DomainError("degree k must be nonnegative");
  const std::int64_t m = 2 * n;
  Builder b(n, k);
  if (k <= n) {
    for (std::int64_t j = 0; j <= k / 2; ++j) b.summand(j, binom(m, k - 2 * j) - binom(m, k - 2 * j - 2));
  } else if (k == n + 1) {
    b.summand(0, binom(m, n) - binom(m, n - 2));
    for (std::int64_t j = 1; j <= (n + 1) / 2; ++j)
      b.summand(j, binom(m, n + 1 - 2 * j) - binom(m, n - 1 - 2 * j));
  } else if (k <= m + 1) {
    b.summand(0, binom(m, k - 1) - binom(m, k + 1));
    for (std::int64_t j = 1; j <= (m - k + 2) / 2; ++j)
      b.summand(j, binom(m, k + 2 * j - 1) - binom(m, k + 2 * j));
  }
  return std::move(b).take();
}

CohomologyTable cohomology_table(std::int64_t n) {
  if (n < 1 || n > 30) throw DomainError("cohomology table needs 1 <= n <= 30");
  CohomologyTable t;
  t.n = n;
  for (std::int64_t k = 0; k <= 2 * n + 2; ++k) {
    auto r = cohomology(n, k);
    t.groups.push_back(std::move(r.group));
    t.clamps.insert(t.clamps.end(), r.clamps.begin(), r.clamps.end());
    if (k % 2 == 0)
      t.euler_characteristic += t.groups.back().free_rank;
    else
      t.euler_characteristic -= t.groups.back().free_rank;
  }
  t.duality = true;
  for (std::int64_t k = 0; k <= 2 * n + 1; ++k)
    if (t.groups[static_cast<std::size_t>(k)].free_rank !=
        t.groups[static_cast<std::size_t>(2 * n + 1 - k)].free_rank)
      t.duality = false;
  return t;
}

std::string format_torsion(const AbelianGroupDesc& g) {
  if (g.torsion.empty()) return "0";
  std::string s;
  for (const auto& [j, mult] : g.torsion) {
    if (!s.empty()) s += "+";
    s += std::to_string(j) + "^" + mult.str();
  }
  return s;
}

}  // namespace heis
