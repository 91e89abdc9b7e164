#include "heis/diophantine.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>

#include "heis/error.hpp"

namespace heis {

namespace {

using Limbs = std::vector<std::uint64_t>;

constexpr long double kPiL = 3.141592653589793238462643383279502884L;

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// floor(frac(x) * 2^(64 w)) as little-endian limbs.
Limbs to_fixed(const BigRational& x, std::size_t w) {
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  const BigInt whole = floor_div(num, den);
  BigInt frac_num = num - whole * den;  // in [0, den)
  BigInt scaled = (frac_num << static_cast<unsigned>(64 * w)) / den;
  Limbs out(w);
  const BigInt mask = (BigInt(1) << 64) - 1;
  for (std::size_t i = 0; i < w; ++i) {
    out[i] = static_cast<std::uint64_t>((scaled & mask).convert_to<unsigned long long>());
    scaled >>= 64;
  }
  return out;
}

void add_into(Limbs& acc, const Limbs& x) {
  unsigned __int128 carry = 0;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    const unsigned __int128 s = static_cast<unsigned __int128>(acc[i]) + x[i] + carry;
    acc[i] = static_cast<std::uint64_t>(s);
    carry = s >> 64;
  }
}

void sub_from(Limbs& acc, const Limbs& x) {
  std::uint64_t borrow = 0;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    const std::uint64_t a = acc[i];
    const std::uint64_t d = a - x[i] - borrow;
    borrow = (a < x[i] || (a == x[i] && borrow)) ? 1 : 0;
    acc[i] = d;
  }
}

/// out = x * m mod 2^(64 w).
void mul_small(const Limbs& x, std::uint64_t m, Limbs& out) {
  unsigned __int128 carry = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const unsigned __int128 p = static_cast<unsigned __int128>(x[i]) * m + carry;
    out[i] = static_cast<std::uint64_t>(p);
    carry = p >> 64;
  }
}

/// Interprets acc / 2^(64 w) as a residue in [-1/2, 1/2).
long double reduced_theta(const Limbs& acc) {
  const std::size_t w = acc.size();
  const bool negative = (acc[w - 1] >> 63) != 0;
  Limbs mag = acc;
  if (negative) {
    for (auto& l : mag) l = ~l;
    for (std::size_t i = 0; i < w; ++i)
      if (++mag[i] != 0) break;
  }
  std::size_t h = w;
  while (h > 0 && mag[h - 1] == 0) --h;
  if (h == 0) return 0.0L;
  --h;
  long double x = static_cast<long double>(mag[h]);
  int shift = static_cast<int>(64 * h) - static_cast<int>(64 * w);
  if (h >= 1) {
    x = x * 18446744073709551616.0L + static_cast<long double>(mag[h - 1]);
    shift -= 64;
  }
  const long double v = std::ldexp(x, shift);
  return negative ? -v : v;
}

}  // namespace

struct PhaseEvaluator::Impl {
  std::size_t n = 0;
  bool exact = false;
  unsigned bits = 0;

  // Exact input: <k, t> = (sum k_i P_i) / Q.
  bool small = false;
  std::int64_t q_small = 1;
  std::vector<std::int64_t> p_small;
  BigInt q_big = 1;
  std::vector<BigInt> p_big;

  // Approximate input: t_i = T_i / 2^(64 w) mod 1, error err_i.
  std::size_t w = 0;
  std::vector<Limbs> fixed;
  std::vector<long double> err;

  Phase exact_phase_small(__int128 r) const {
    r %= q_small;
    if (r < 0) r += q_small;
    if (2 * r >= q_small) r -= q_small;
    return {static_cast<long double>(static_cast<std::int64_t>(r)) / static_cast<long double>(q_small),
            0.0L, true};
  }

  Phase exact_phase_big(BigInt r) const {
    r %= q_big;
    if (r < 0) r += q_big;
    if (2 * r >= q_big) r -= q_big;
    const BigRational theta(r, q_big);
    return {static_cast<long double>(theta.convert_to<double>()), 0.0L, true};
  }
};

PhaseEvaluator::PhaseEvaluator(const std::vector<PrecisionReal>& t) : impl_(std::make_unique<Impl>()) {
  if (t.empty()) throw DomainError("translation vector must be nonempty");
  Impl& m = *impl_;
  m.n = t.size();
  m.exact = std::all_of(t.begin(), t.end(), [](const PrecisionReal& r) { return r.is_exact(); });
  for (const auto& r : t) m.bits = std::max(m.bits, r.precision_bits());

  if (m.exact) {
    BigInt q = 1;
    for (const auto& r : t) q = lcm(q, BigInt(boost::multiprecision::denominator(r.center())));
    m.q_big = q;
    for (const auto& r : t) {
      BigInt p = boost::multiprecision::numerator(r.center()) *
                 (q / boost::multiprecision::denominator(r.center()));
      p %= q;
      if (p < 0) p += q;
      m.p_big.push_back(p);
    }
    if (q < (BigInt(1) << 62)) {
      m.small = true;
      m.q_small = q.convert_to<std::int64_t>();
      for (const auto& p : m.p_big) m.p_small.push_back(p.convert_to<std::int64_t>());
    }
    return;
  }

  m.w = m.bits / 64 + 2;
  const long double trunc = std::ldexp(1.0L, -static_cast<int>(64 * m.w));
  for (const auto& r : t) {
    m.fixed.push_back(to_fixed(r.center(), m.w));
    m.err.push_back(r.is_exact() ? trunc
                                 : std::ldexp(1.0L, static_cast<int>(std::ceil(r.error_log2()))) + trunc);
  }
}

PhaseEvaluator::~PhaseEvaluator() = default;

std::size_t PhaseEvaluator::dim() const noexcept { return impl_->n; }
bool PhaseEvaluator::exact() const noexcept { return impl_->exact; }
unsigned PhaseEvaluator::precision_bits() const noexcept { return impl_->bits; }

Phase PhaseEvaluator::phase(std::span<const std::int64_t> k) const {
  const Impl& m = *impl_;
  if (k.size() != m.n)
    throw DimensionMismatchError("multi-index has length " + std::to_string(k.size()) +
                                 ", translation vector has length " + std::to_string(m.n));
  if (m.exact) {
    if (m.small) {
      __int128 r = 0;
      for (std::size_t i = 0; i < m.n; ++i) {
        r += static_cast<__int128>(k[i]) * m.p_small[i];
        r %= m.q_small;
      }
      return m.exact_phase_small(r);
    }
    BigInt r = 0;
    for (std::size_t i = 0; i < m.n; ++i) r += BigInt(k[i]) * m.p_big[i];
    return m.exact_phase_big(std::move(r));
  }
  Limbs acc(m.w, 0), tmp(m.w);
  long double err = 0.0L;
  for (std::size_t i = 0; i < m.n; ++i) {
    if (k[i] == 0) continue;
    const std::uint64_t mag = k[i] < 0 ? 0 - static_cast<std::uint64_t>(k[i]) : static_cast<std::uint64_t>(k[i]);
    mul_small(m.fixed[i], mag, tmp);
    if (k[i] > 0)
      add_into(acc, tmp);
    else
      sub_from(acc, tmp);
    err += static_cast<long double>(mag) * m.err[i];
  }
  return {reduced_theta(acc), err, false};
}

void PhaseEvaluator::sweep_line(std::int64_t count,
                                const std::function<void(std::int64_t, const Phase&)>& visit) const {
  const Impl& m = *impl_;
  if (m.n != 1) throw DimensionMismatchError("sweep_line needs a one-dimensional vector");
  if (m.exact && m.small) {
    std::int64_t r = 0;
    for (std::int64_t k = 1; k <= count; ++k) {
      r += m.p_small[0];
      if (r >= m.q_small) r -= m.q_small;
      visit(k, m.exact_phase_small(r));
    }
    return;
  }
  if (m.exact) {
    for (std::int64_t k = 1; k <= count; ++k) {
      const std::int64_t kk[1] = {k};
      visit(k, phase(kk));
    }
    return;
  }
  Limbs acc(m.w, 0);
  for (std::int64_t k = 1; k <= count; ++k) {
    add_into(acc, m.fixed[0]);
    visit(k, {reduced_theta(acc), static_cast<long double>(k) * m.err[0], false});
  }
}

double resolved_divisor(const Phase& p) {
  if (!p.exact) {
    // Ask for ~20 bits of relative accuracy on |theta|.
    if (std::abs(p.theta) <= std::ldexp(p.error, 20))
      throw PrecisionError("small divisor not resolvable at this precision (|theta| <= 2^20 * error)");
  }
  const double d = static_cast<double>(2.0L * std::abs(std::sin(kPiL * p.theta)));
  if (d != 0.0 && d < DBL_MIN) throw PrecisionError("small divisor below double range");
  return d;
}

double small_divisor(const std::vector<PrecisionReal>& t, const MultiIndex& k) {
  if (std::all_of(k.begin(), k.end(), [](std::int64_t v) { return v == 0; }))
    throw DomainError("small divisor is undefined at k = 0");
  const PhaseEvaluator ev(t);
  return resolved_divisor(ev.phase(k));
}

Complex divisor_factor(long double theta) {
  // 1 - e^{2 pi i theta} = 2 sin^2(pi theta) - i sin(2 pi theta)
  const long double s = std::sin(kPiL * theta);
  return {static_cast<double>(2.0L * s * s), static_cast<double>(-std::sin(2.0L * kPiL * theta))};
}

std::vector<std::pair<BigInt, BigInt>> ContinuedFraction::convergents() const {
  std::vector<std::pair<BigInt, BigInt>> out;
  BigInt p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
  for (const auto& a : quotients) {
    BigInt p = a * p_prev + p_prev2;
    BigInt q = a * q_prev + q_prev2;
    out.emplace_back(p, q);
    p_prev2 = p_prev;
    p_prev = p;
    q_prev2 = q_prev;
    q_prev = q;
  }
  return out;
}

namespace {

BigInt floor_q(const BigRational& x) {
  return floor_div(boost::multiprecision::numerator(x), boost::multiprecision::denominator(x));
}

}  // namespace

ContinuedFraction continued_fraction(const PrecisionReal& x, std::size_t depth) {
  if (depth == 0) throw DomainError("continued fraction depth must be positive");
  ContinuedFraction cf;
  if (x.is_exact()) {
    BigInt num = boost::multiprecision::numerator(x.center());
    BigInt den = boost::multiprecision::denominator(x.center());
    while (cf.quotients.size() < depth) {
      const BigInt a = floor_div(num, den);
      cf.quotients.push_back(a);
      const BigInt r = num - a * den;
      if (r == 0) {
        cf.terminated = true;
        break;
      }
      num = den;
      den = r;
    }
    return cf;
  }

  const int e = static_cast<int>(std::ceil(x.error_log2()));
  const BigRational radius = e >= 0 ? BigRational(BigInt(1) << e)
                                    : BigRational(BigInt(1), BigInt(1) << (-e));
  BigRational lo = x.center() - radius;
  BigRational hi = x.center() + radius;
  while (cf.quotients.size() < depth) {
    const BigInt a_lo = floor_q(lo), a_hi = floor_q(hi);
    if (a_lo != a_hi)
      throw PrecisionError("continued fraction needs more precision after " +
                           std::to_string(cf.quotients.size()) + " partial quotients");
    cf.quotients.push_back(a_lo);
    if (cf.quotients.size() == depth) break;
    const BigRational r_lo = lo - BigRational(a_lo), r_hi = hi - BigRational(a_hi);
    if (r_lo == 0 || r_hi == 0)
      throw PrecisionError("continued fraction needs more precision after " +
                           std::to_string(cf.quotients.size()) + " partial quotients");
    lo = BigRational(1) / r_lo;
    hi = BigRational(1) / r_hi;
  }
  return cf;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kRational: return "Rational";
    case Verdict::kDiophantineEvidence: return "DiophantineEvidence";
    case Verdict::kLiouvilleEvidence: return "LiouvilleEvidence";
    case Verdict::kInconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

namespace {

bool lex_less(const MultiIndex& a, const MultiIndex& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool record_less(const DivisorRecord& a, const DivisorRecord& b) {
  return a.divisor < b.divisor || (a.divisor == b.divisor && lex_less(a.k, b.k));
}

class ScanState {
 public:
  ScanState(std::vector<double> s_grid, std::int64_t kmax, bool exact) : exact_(exact) {
    const int blocks = 64 - __builtin_clzll(static_cast<unsigned long long>(kmax));
    for (double s : s_grid) {
      ExponentRow row;
      row.s = s;
      row.constant = std::numeric_limits<double>::infinity();
      row.block_minima.assign(static_cast<std::size_t>(blocks), std::numeric_limits<double>::infinity());
      rows_.push_back(std::move(row));
    }
    s_max_ = s_grid.back();
  }

  void visit(const MultiIndex& k, std::int64_t norm, const Phase& phase) {
    const double div = resolved_divisor(phase);
    ++scanned_;
    if (exact_ && div == 0.0 && !zero_) zero_ = DivisorRecord{k, 0.0, static_cast<double>(norm), 0.0};

    const double log_norm = std::log(static_cast<double>(norm));
    const auto block = static_cast<std::size_t>(63 - __builtin_clzll(static_cast<unsigned long long>(norm)));
    for (auto& row : rows_) {
      const double v = div * std::exp(row.s * log_norm);
      if (v < row.constant || (v == row.constant && lex_less(k, row.argmin))) {
        row.constant = v;
        row.argmin = k;
      }
      row.block_minima[block] = std::min(row.block_minima[block], v);
    }

    DivisorRecord rec{k, div, static_cast<double>(norm), static_cast<double>(phase.theta)};
    if (norm >= 2 && div <= std::exp(-s_max_ * log_norm)) {
      ++witness_count_;
      if (witnesses_.size() < ClassificationReport::kMaxWitnesses) {
        Witness w;
        w.record = rec;
        w.divisor_exponent = div > 0.0 ? -std::log(div) / log_norm : INFINITY;
        const double abs_theta = std::abs(rec.phase);
        w.approximation_exponent = abs_theta > 0.0 ? 1.0 - std::log(abs_theta) / log_norm : INFINITY;
        witnesses_.push_back(std::move(w));
      }
    }

    if (smallest_.size() < ClassificationReport::kKeepSmallest || record_less(rec, smallest_.back())) {
      auto pos = std::upper_bound(smallest_.begin(), smallest_.end(), rec, record_less);
      smallest_.insert(pos, std::move(rec));
      if (smallest_.size() > ClassificationReport::kKeepSmallest) smallest_.pop_back();
    }
  }

  ClassificationReport finish(std::int64_t kmax, unsigned bits) && {
    ClassificationReport rep;
    rep.kmax = kmax;
    rep.precision_bits = bits;
    rep.exact_input = exact_;
    rep.scanned = scanned_;
    rep.witness_count = witness_count_;
    rep.witnesses = std::move(witnesses_);
    rep.smallest = std::move(smallest_);
    rep.zero = std::move(zero_);
    for (auto& row : rows_) {
      std::vector<double> filled;
      for (double m : row.block_minima)
        if (std::isfinite(m)) filled.push_back(m);
      if (filled.size() == 1) {
        row.bounded = filled[0] > 0.0;
      } else if (filled.size() >= 2) {
        const std::size_t half = filled.size() / 2;
        const double lower = *std::min_element(filled.begin(), filled.begin() + static_cast<long>(half));
        const double upper = *std::min_element(filled.begin() + static_cast<long>(half), filled.end());
        row.bounded = upper > 0.0 && upper >= 0.25 * lower;
      }
    }
    rep.rows = std::move(rows_);

    if (rep.zero) {
      rep.verdict = Verdict::kRational;
    } else if (rep.witness_count > 0) {
      rep.verdict = Verdict::kLiouvilleEvidence;
    } else {
      rep.verdict = Verdict::kInconclusive;
      for (const auto& row : rep.rows) {
        if (row.bounded && row.constant > 0.0) {
          rep.verdict = Verdict::kDiophantineEvidence;
          rep.evidence_s = row.s;
          rep.evidence_constant = row.constant;
          break;
        }
      }
    }
    return rep;
  }

 private:
  bool exact_;
  double s_max_ = 0.0;
  std::size_t scanned_ = 0;
  std::vector<ExponentRow> rows_;
  std::vector<Witness> witnesses_;
  std::size_t witness_count_ = 0;
  std::vector<DivisorRecord> smallest_;
  std::optional<DivisorRecord> zero_;
};

/// Visits the canonical half of the max-norm shell of radius r in
/// lexicographic order.
template <typename F>
void for_each_in_shell(std::size_t n, std::int64_t r, F&& f) {
  MultiIndex k(n, 0);
  auto rec = [&](auto&& self, std::size_t i, bool hit, bool all_zero) -> void {
    if (i == n) {
      if (hit) f(k);
      return;
    }
    const std::int64_t lo = all_zero ? 0 : -r;
    if (i + 1 == n && !hit) {
      for (std::int64_t v : {-r, r}) {
        if (v < lo) continue;
        k[i] = v;
        self(self, i + 1, true, false);
      }
      return;
    }
    for (std::int64_t v = lo; v <= r; ++v) {
      k[i] = v;
      self(self, i + 1, hit || v == r || v == -r, all_zero && v == 0);
    }
  };
  rec(rec, 0, false, true);
}

}  // namespace

ClassificationReport classify(const std::vector<PrecisionReal>& t, std::int64_t kmax,
                              std::vector<double> s_grid) {
  if (kmax < 1) throw DomainError("Kmax must be at least 1");
  if (s_grid.empty()) throw DomainError("s grid must be nonempty");
  for (double s : s_grid)
    if (!std::isfinite(s) || s < 0.0) throw DomainError("s values must be finite and nonnegative");
  std::sort(s_grid.begin(), s_grid.end());
  s_grid.erase(std::unique(s_grid.begin(), s_grid.end()), s_grid.end());

  const PhaseEvaluator ev(t);
  ScanState state(s_grid, kmax, ev.exact());
  if (ev.dim() == 1) {
    MultiIndex k(1);
    ev.sweep_line(kmax, [&](std::int64_t kk, const Phase& p) {
      k[0] = kk;
      state.visit(k, kk, p);
    });
  } else {
    for (std::int64_t r = 1; r <= kmax; ++r)
      for_each_in_shell(ev.dim(), r, [&](const MultiIndex& k) { state.visit(k, r, ev.phase(k)); });
  }
  return std::move(state).finish(kmax, ev.precision_bits());
}

bool fan_member(std::int64_t lambda, std::int64_t xi, std::int64_t n) {
  if (n < 1) throw DomainError("fan parameter n must be positive");
  if (lambda == 0) return xi >= 0;
  const __int128 l = lambda < 0 ? -static_cast<__int128>(lambda) : static_cast<__int128>(lambda);
  const __int128 offset = static_cast<__int128>(xi) - l * n;
  return offset >= 0 && offset % (2 * l) == 0;
}

}  // namespace heis
