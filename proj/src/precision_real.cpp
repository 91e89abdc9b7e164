#include "heis/precision_real.hpp"

#include <mpfr.h>

#include <cctype>
#include <cmath>

#include "heis/error.hpp"

namespace heis {

namespace {

/// Minimal RAII holder for an mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(unsigned bits) { mpfr_init2(v_, static_cast<mpfr_prec_t>(bits)); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

BigRational to_rational(Mpfr& x) {
  BigRational q;
  mpfr_get_q(q.backend().data(), x.get());
  return q;
}

/// Upper bound on log2 |q| for q != 0.
double log2_upper(const BigRational& q) {
  const BigInt num = abs(boost::multiprecision::numerator(q));
  const BigInt den = boost::multiprecision::denominator(q);
  return static_cast<double>(msb(num)) + 1.0 - static_cast<double>(msb(den));
}

BigInt pow10(unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

/// Exact value of a decimal literal such as "-12.5e-3"; nullopt-like false
/// return when the text is not a decimal.
bool parse_decimal(std::string_view s, BigRational& out) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  BigInt mant = 0;
  long frac_digits = 0;
  bool any = false, dot = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mant = mant * 10 + (c - '0');
      any = true;
      if (dot) ++frac_digits;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any) return false;
  long exp10 = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
    if (i >= s.size()) return false;
    long e = 0;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
      e = e * 10 + (s[i] - '0');
      if (e > 100000) return false;
    }
    exp10 = eneg ? -e : e;
  }
  if (i != s.size()) return false;
  const long scale = exp10 - frac_digits;
  BigRational v(mant);
  if (scale >= 0)
    v *= BigRational(pow10(static_cast<unsigned>(scale)));
  else
    v /= BigRational(pow10(static_cast<unsigned>(-scale)));
  out = neg ? BigRational(-v) : v;
  return true;
}

bool parse_fraction(std::string_view s, BigRational& out) {
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return false;
  auto is_int = [](std::string_view t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  const auto a = s.substr(0, slash), b = s.substr(slash + 1);
  if (!is_int(a) || !is_int(b)) return false;
  BigInt num(std::string(a[0] == '+' ? a.substr(1) : a));
  BigInt den(std::string(b[0] == '+' ? b.substr(1) : b));
  if (den == 0) throw DomainError("zero denominator in '" + std::string(s) + "'");
  out = BigRational(num, den);
  return true;
}

}  // namespace

void require_precision(unsigned bits) {
  if (bits < PrecisionReal::kMinBits || bits > PrecisionReal::kMaxBits)
    throw DomainError("precision must lie in [" + std::to_string(PrecisionReal::kMinBits) + ", " +
                      std::to_string(PrecisionReal::kMaxBits) + "] bits");
}

PrecisionReal::PrecisionReal(BigRational center, bool exact, unsigned bits, double error_log2)
    : center_(std::move(center)), exact_(exact), bits_(bits), error_log2_(error_log2) {}

PrecisionReal PrecisionReal::exact(BigRational value, unsigned bits) {
  require_precision(bits);
  return PrecisionReal(std::move(value), true, bits, -INFINITY);
}

PrecisionReal PrecisionReal::approximate(const BigRational& value, unsigned bits) {
  require_precision(bits);
  Mpfr x(bits);
  mpfr_set_q(x.get(), value.backend().data(), MPFR_RNDN);
  BigRational c = to_rational(x);
  const double err = (c == 0) ? -static_cast<double>(bits)
                              : 1.0 - static_cast<double>(bits) + log2_upper(c);
  return PrecisionReal(std::move(c), false, bits, err);
}

PrecisionReal PrecisionReal::parse(std::string_view text, unsigned bits) {
  require_precision(bits);
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw DomainError("empty real literal");

  BigRational q;
  if (parse_fraction(s, q) || parse_decimal(s, q)) return exact(q, bits);

  bool neg = false;
  if (s.front() == '-') {
    neg = true;
    s.remove_prefix(1);
  }
  const unsigned work = bits + 64;
  Mpfr x(work);
  if (s == "golden" || s == "phi") {
    mpfr_sqrt_ui(x.get(), 5, MPFR_RNDN);
    if (s == "golden")
      mpfr_sub_ui(x.get(), x.get(), 1, MPFR_RNDN);
    else
      mpfr_add_ui(x.get(), x.get(), 1, MPFR_RNDN);
    mpfr_div_ui(x.get(), x.get(), 2, MPFR_RNDN);
  } else if (s == "pi") {
    mpfr_const_pi(x.get(), MPFR_RNDN);
  } else if (s == "e") {
    mpfr_set_ui(x.get(), 1, MPFR_RNDN);
    mpfr_exp(x.get(), x.get(), MPFR_RNDN);
  } else if (s == "liouville") {
    // Partial sums are exact; stop once 10^{-j!} is far below the precision.
    BigRational sum = 0;
    BigInt fact = 1;
    for (unsigned j = 1;; ++j) {
      fact *= j;
      if (fact > BigInt(work)) break;
      sum += BigRational(BigInt(1), pow10(fact.convert_to<unsigned>()));
    }
    mpfr_set_q(x.get(), sum.backend().data(), MPFR_RNDN);
  } else if (s.size() > 6 && s.substr(0, 5) == "sqrt(" && s.back() == ')') {
    const auto arg = s.substr(5, s.size() - 6);
    for (char c : arg)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw DomainError("sqrt() takes a nonnegative integer, got '" + std::string(arg) + "'");
    const BigInt n(std::string{arg});
    const BigInt root = sqrt(n);
    if (root * root == n) return exact(BigRational(neg ? BigInt(-root) : root), bits);
    mpfr_set_z(x.get(), n.backend().data(), MPFR_RNDN);
    mpfr_sqrt(x.get(), x.get(), MPFR_RNDN);
  } else {
    throw DomainError("cannot parse real literal '" + std::string(text) + "'");
  }
  if (neg) mpfr_neg(x.get(), x.get(), MPFR_RNDN);
  return approximate(to_rational(x), bits);
}

double PrecisionReal::to_double() const { return center_.convert_to<double>(); }

std::string PrecisionReal::to_string() const {
  if (exact_) return center_.str();
  Mpfr x(bits_);
  mpfr_set_q(x.get(), center_.backend().data(), MPFR_RNDN);
  const int digits = static_cast<int>(std::ceil(bits_ * 0.30103)) + 1;
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, x.get());
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

}  // namespace heis
