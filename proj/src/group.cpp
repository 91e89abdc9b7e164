#include "heis/group.hpp"

#include <charconv>
#include <sstream>

#include "heis/checked.hpp"
#include "heis/error.hpp"

namespace heis {

namespace ck = checked;

Element commutator(const Element& a, const Element& b) {
  return multiply(multiply(multiply(a, b), inverse(a)), inverse(b));
}

Element conjugate(const Element& a, const Element& b) {
  return multiply(multiply(a, b), inverse(a));
}

Element power(const Element& a, std::int64_t e) {
  Element base = a;
  std::uint64_t n;
  if (e < 0) {
    base = inverse(a);
    n = static_cast<std::uint64_t>(-(e + 1)) + 1;
  } else {
    n = static_cast<std::uint64_t>(e);
  }
  Element result = identity();
  while (n != 0) {
    if (n & 1u) result = multiply(result, base);
    n >>= 1;
    if (n != 0) base = multiply(base, base);
  }
  return result;
}

NormalForm normal_form(const Element& a) { return {a.y, a.x, a.z}; }

Element reconstruct(const NormalForm& nf) {
  return multiply(multiply(power(g1(), nf.a), power(g2(), nf.b)), power(g3(), nf.c));
}

bool is_central(const Element& a) { return a.x == 0 && a.y == 0; }

namespace printed {

Element commutator(const Element& a, const Element& b) {
  return {0, 0, ck::sub(ck::mul(a.y, b.z), ck::mul(a.z, b.y))};
}

Element conjugate(const Element& a, const Element& b) {
  return {a.x, a.y, ck::sub(ck::add(b.z, ck::mul(a.y, b.x)), ck::mul(b.x, b.y))};
}

}  // namespace printed

std::vector<ProbeOutcome> probe_printed_formulas(const Element& a, const Element& b) {
  std::vector<ProbeOutcome> out;
  ProbeOutcome conj{"conjugation", conjugate(a, b), printed::conjugate(a, b), false};
  conj.agrees = conj.group_law == conj.printed;
  ProbeOutcome comm{"commutator", commutator(a, b), printed::commutator(a, b), false};
  comm.agrees = comm.group_law == comm.printed;
  out.push_back(std::move(conj));
  out.push_back(std::move(comm));
  return out;
}

ElementN::ElementN(std::vector<std::int64_t> x, std::vector<std::int64_t> y, std::int64_t z)
    : x_(std::move(x)), y_(std::move(y)), z_(z) {
  if (x_.size() != y_.size())
    throw DimensionMismatchError("x and y coordinate sequences differ in length");
  if (x_.empty()) throw DomainError("Heisenberg element needs n >= 1");
}

ElementN ElementN::identity(std::size_t n) {
  return ElementN(std::vector<std::int64_t>(n, 0), std::vector<std::int64_t>(n, 0), 0);
}

ElementN ElementN::from(const Element& e) { return ElementN({e.x}, {e.y}, e.z); }

Element ElementN::to_element() const {
  if (dim() != 1) throw DimensionMismatchError("element is not in H_1");
  return {x_[0], y_[0], z_};
}

std::int64_t inner(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  if (a.size() != b.size()) throw DimensionMismatchError("inner product of unequal lengths");
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc = ck::add(acc, ck::mul(a[i], b[i]));
  return acc;
}

namespace {

std::vector<std::int64_t> add_vec(const std::vector<std::int64_t>& a,
                                  const std::vector<std::int64_t>& b) {
  std::vector<std::int64_t> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = ck::add(a[i], b[i]);
  return r;
}

std::vector<std::int64_t> neg_vec(const std::vector<std::int64_t>& a) {
  std::vector<std::int64_t> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = ck::neg(a[i]);
  return r;
}

void require_same_dim(const ElementN& a, const ElementN& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatchError("elements of H_" + std::to_string(a.dim()) + " and H_" +
                                 std::to_string(b.dim()));
}

}  // namespace

ElementN multiply(const ElementN& a, const ElementN& b) {
  require_same_dim(a, b);
  return ElementN(add_vec(a.x(), b.x()), add_vec(a.y(), b.y()),
                  ck::add(ck::add(a.z(), b.z()), inner(a.x(), b.y())));
}

ElementN inverse(const ElementN& a) {
  return ElementN(neg_vec(a.x()), neg_vec(a.y()), ck::add(ck::neg(a.z()), inner(a.x(), a.y())));
}

ElementN commutator(const ElementN& a, const ElementN& b) {
  return multiply(multiply(multiply(a, b), inverse(a)), inverse(b));
}

IntMatrix::IntMatrix(std::size_t size) : size_(size), data_(size * size, 0) {}

IntMatrix IntMatrix::identity(std::size_t size) {
  IntMatrix m(size);
  for (std::size_t i = 0; i < size; ++i) m(i, i) = 1;
  return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.size() != b.size()) throw DimensionMismatchError("matrix sizes differ");
  const std::size_t n = a.size();
  IntMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) = ck::add(r(i, j), ck::mul(a(i, k), b(k, j)));
    }
  return r;
}

IntMatrix matrix_embed(const ElementN& a) {
  const std::size_t n = a.dim();
  IntMatrix m = IntMatrix::identity(n + 2);
  for (std::size_t i = 0; i < n; ++i) {
    m(0, i + 1) = a.x()[i];
    m(i + 1, n + 1) = a.y()[i];
  }
  m(0, n + 1) = a.z();
  return m;
}

namespace {

std::vector<std::int64_t> parse_ints(std::string_view text, std::size_t line_number) {
  std::vector<std::int64_t> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\r') ++j;
    std::string_view tok = text.substr(i, j - i);
    std::int64_t v = 0;
    const char* first = tok.data();
    if (!tok.empty() && tok.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
    if (ec == std::errc::result_out_of_range)
      throw ParseError(line_number, "integer out of range: '" + std::string(tok) + "'");
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw ParseError(line_number, "expected an integer, got '" + std::string(tok) + "'");
    out.push_back(v);
    i = j;
  }
  return out;
}

}  // namespace

ElementN parse_element(std::string_view line, std::size_t line_number) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == '|') {
      parts.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  if (parts.size() == 1) {
    auto v = parse_ints(parts[0], line_number);
    if (v.size() != 3) throw ParseError(line_number, "expected 'x y z'");
    return ElementN({v[0]}, {v[1]}, v[2]);
  }
  if (parts.size() != 3) throw ParseError(line_number, "expected 'x1 .. xn | y1 .. yn | z'");
  auto xs = parse_ints(parts[0], line_number);
  auto ys = parse_ints(parts[1], line_number);
  auto zs = parse_ints(parts[2], line_number);
  if (xs.empty() || xs.size() != ys.size())
    throw ParseError(line_number, "x and y blocks must be nonempty and of equal length");
  if (zs.size() != 1) throw ParseError(line_number, "z block must hold exactly one integer");
  return ElementN(std::move(xs), std::move(ys), zs[0]);
}

std::string format_element(const ElementN& a) {
  std::ostringstream os;
  if (a.dim() == 1) {
    os << a.x()[0] << ' ' << a.y()[0] << ' ' << a.z();
    return os.str();
  }
  for (std::size_t i = 0; i < a.dim(); ++i) os << (i ? " " : "") << a.x()[i];
  os << " |";
  for (std::size_t i = 0; i < a.dim(); ++i) os << ' ' << a.y()[i];
  os << " | " << a.z();
  return os.str();
}

std::string format_element(const Element& a) { return format_element(ElementN::from(a)); }

}  // namespace heis
