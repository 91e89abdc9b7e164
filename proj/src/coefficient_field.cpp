#include "heis/coefficient_field.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string>

#include "heis/error.hpp"
#include "heis/format.hpp"

namespace heis {

std::int64_t max_norm(const MultiIndex& k) {
  std::int64_t m = 0;
  for (auto v : k) {
    if (v == INT64_MIN) throw OverflowError("multi-index component has no absolute value");
    m = std::max(m, v < 0 ? -v : v);
  }
  return m;
}

CoefficientField::CoefficientField(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw DomainError("coefficient field needs dim >= 1");
}

void CoefficientField::check_dim(const MultiIndex& k) const {
  if (k.size() != dim_)
    throw DimensionMismatchError("multi-index of length " + std::to_string(k.size()) +
                                 " in a dim=" + std::to_string(dim_) + " field");
}

Complex CoefficientField::at(const MultiIndex& k) const {
  check_dim(k);
  auto it = entries_.find(k);
  return it == entries_.end() ? Complex{} : it->second;
}

void CoefficientField::set(MultiIndex k, Complex v) {
  check_dim(k);
  entries_[std::move(k)] = v;
}

void CoefficientField::add(MultiIndex k, Complex v) {
  check_dim(k);
  entries_[std::move(k)] += v;
}

std::int64_t CoefficientField::support_radius() const {
  std::int64_t r = 0;
  for (const auto& [k, v] : entries_) r = std::max(r, max_norm(k));
  return r;
}

CoefficientField CoefficientField::truncated(std::int64_t radius) const {
  CoefficientField out(dim_);
  for (const auto& [k, v] : entries_)
    if (max_norm(k) <= radius) out.entries_.emplace(k, v);
  return out;
}

double CoefficientField::l2_norm() const {
  double s = 0.0;
  for (const auto& [k, v] : entries_) s += std::norm(v);
  return std::sqrt(s);
}

double CoefficientField::l1_norm() const {
  double s = 0.0;
  for (const auto& [k, v] : entries_) s += std::abs(v);
  return s;
}

CoefficientField operator+(const CoefficientField& a, const CoefficientField& b) {
  if (a.dim() != b.dim()) throw DimensionMismatchError("adding fields of different dim");
  CoefficientField out = a;
  for (const auto& [k, v] : b) out.add(k, v);
  return out;
}

CoefficientField operator*(Complex s, const CoefficientField& a) {
  CoefficientField out(a.dim());
  for (const auto& [k, v] : a) out.set(k, s * v);
  return out;
}

double max_abs_difference(const CoefficientField& a, const CoefficientField& b) {
  if (a.dim() != b.dim()) throw DimensionMismatchError("comparing fields of different dim");
  double m = 0.0;
  for (const auto& [k, v] : a) m = std::max(m, std::abs(v - b.at(k)));
  for (const auto& [k, v] : b)
    if (!a.contains(k)) m = std::max(m, std::abs(v));
  return m;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::int64_t to_int(std::string_view tok, std::size_t line) {
  std::int64_t v = 0;
  const char* first = tok.data();
  if (!tok.empty() && tok.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "expected an integer index, got '" + std::string(tok) + "'");
  return v;
}

double to_real(std::string_view tok, std::size_t line) {
  std::string s(tok);
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty())
    throw ParseError(line, "expected a real number, got '" + s + "'");
  if (!std::isfinite(v)) throw ParseError(line, "non-finite coefficient '" + s + "'");
  return v;
}

}  // namespace

CoefficientField read_coefficients(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t dim = 0;
  bool have_header = false;
  CoefficientField out(1);
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = split_ws(line);
    if (toks.empty() || toks.front().front() == '#') continue;
    if (!have_header) {
      if (toks.size() != 1 || toks[0].substr(0, 4) != "dim=")
        throw ParseError(lineno, "expected header 'dim=<d>'");
      std::int64_t d = to_int(toks[0].substr(4), lineno);
      if (d < 1) throw ParseError(lineno, "dim must be positive");
      dim = static_cast<std::size_t>(d);
      out = CoefficientField(dim);
      have_header = true;
      continue;
    }
    if (toks.size() != dim + 2)
      throw ParseError(lineno, "expected " + std::to_string(dim) + " indices and 're im'");
    MultiIndex k(dim);
    for (std::size_t i = 0; i < dim; ++i) k[i] = to_int(toks[i], lineno);
    Complex v{to_real(toks[dim], lineno), to_real(toks[dim + 1], lineno)};
    if (out.contains(k)) throw ParseError(lineno, "duplicate multi-index");
    out.set(std::move(k), v);
  }
  if (!have_header) throw ParseError(lineno, "missing 'dim=<d>' header");
  return out;
}

void write_coefficients(std::ostream& out, const CoefficientField& f) {
  out << "dim=" << f.dim() << '\n';
  for (const auto& [k, v] : f) {
    for (auto c : k) out << c << ' ';
    out << format_complex(v) << '\n';
  }
}

}  // namespace heis
