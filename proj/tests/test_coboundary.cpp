#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "heis/coboundary.hpp"
#include "heis/error.hpp"
#include "heis/fourier.hpp"
#include "oracles.hpp"

using namespace heis;

namespace {

std::vector<PrecisionReal> vec(std::initializer_list<const char*> items, unsigned bits = 128) {
  std::vector<PrecisionReal> out;
  for (const char* s : items) out.push_back(PrecisionReal::parse(s, bits));
  return out;
}

CoefficientField random_field(std::mt19937_64& g, std::size_t dim, int count, std::int64_t r,
                              bool with_mean = false) {
  CoefficientField f(dim);
  for (int i = 0; i < count; ++i) {
    MultiIndex k(dim);
    for (auto& c : k) c = oracle::uniform(g, -r, r);
    f.set(k, {oracle::uniform_real(g, -1, 1), oracle::uniform_real(g, -1, 1)});
  }
  if (!with_mean) f.erase(MultiIndex(dim, 0));
  return f;
}

/// Hermitian completion: c_{-k} = conj(c_k).
CoefficientField hermitian(const CoefficientField& f) {
  CoefficientField out(f.dim());
  for (const auto& [k, v] : f) {
    MultiIndex neg = k;
    for (auto& c : neg) c = -c;
    if (k == neg) continue;
    out.set(k, v);
    out.set(neg, std::conj(v));
  }
  return out;
}

CoboundaryProblem problem(CoefficientField g, std::vector<PrecisionReal> u) {
  return {std::move(g), std::move(u), {}};
}

Complex cis(double turns) { return std::polar(1.0, 2.0 * std::numbers::pi * turns); }

}  // namespace

TEST(Obstruction, Examples) {
  CoefficientField g(1);
  g.set({1}, 1.0);
  EXPECT_EQ(obstruction(g), Complex(0.0));
  g.set({0}, 3.0);
  EXPECT_EQ(obstruction(g), Complex(3.0));
  auto rng = oracle::rng(51);
  for (int i = 0; i < 50; ++i) {
    const auto f = random_field(rng, 1, 10, 20, true);
    EXPECT_LT(std::abs(obstruction(coboundary_from(f, vec({"golden"})))), 1e-14);
  }
}

TEST(Solve, Examples) {
  EXPECT_TRUE(solve(problem(CoefficientField(1), vec({"golden"}))).f.empty());

  CoefficientField g(1);
  g.set({1}, 1.0);
  const auto sol = solve(problem(g, vec({"1/4"})));
  EXPECT_LT(std::abs(sol.f.at({1}) - Complex(0.5, 0.5)), 1e-15);
  EXPECT_FALSE(sol.f.contains({0}));
  EXPECT_NEAR(sol.diagnostics.min_divisor, std::sqrt(2.0), 1e-15);
  EXPECT_EQ(sol.diagnostics.argmin_k, MultiIndex{1});
  ASSERT_TRUE(sol.diagnostics.residual_sup.has_value());
  EXPECT_LE(*sol.diagnostics.residual_sup, 1e-12);
}

TEST(CoboundaryFrom, Examples) {
  CoefficientField c(1);
  c.set({0}, 5.0);
  EXPECT_TRUE(coboundary_from(c, vec({"golden"})).empty());
  CoefficientField f(1);
  f.set({1}, 1.0);
  EXPECT_LT(std::abs(coboundary_from(f, vec({"1/2"})).at({1}) - 2.0), 1e-15);
}

TEST(Solve, RoundTripGoldenRatio) {
  auto rng = oracle::rng(52);
  const auto u = vec({"golden"});
  for (int i = 0; i < 50; ++i) {
    const auto f = random_field(rng, 1, 25, 20);
    const auto sol = solve(problem(coboundary_from(f, u), u));
    EXPECT_LT(max_abs_difference(sol.f, f), 1e-10);
  }
}

TEST(Solve, RoundTripTwoDimensional) {
  auto rng = oracle::rng(53);
  const auto u = vec({"golden", "sqrt(2)"});
  for (int i = 0; i < 20; ++i) {
    const auto f = random_field(rng, 2, 30, 10);
    const auto g = coboundary_from(f, u);
    const auto sol = solve(problem(g, u));
    EXPECT_LT(max_abs_difference(sol.f, f), 1e-10);
    EXPECT_LT(max_abs_difference(coboundary_from(sol.f, u), g), 1e-12);
    ASSERT_TRUE(sol.diagnostics.residual_sup.has_value());
    EXPECT_LE(*sol.diagnostics.residual_sup, 1e-9 * g.l1_norm());
  }
}

TEST(Solve, NonzeroMean) {
  CoefficientField g(1);
  g.set({0}, 1e-3);
  g.set({2}, 1.0);
  EXPECT_THROW(solve(problem(g, vec({"golden"}))), NonzeroMeanError);
  g.set({0}, 1e-14);
  EXPECT_NO_THROW(solve(problem(g, vec({"golden"}))));
}

TEST(Solve, ResonanceListsEveryBlockedMode) {
  CoefficientField g(1);
  g.set({3}, 1.0);
  g.set({-6}, 2.0);
  g.set({1}, 1.0);
  g.set({9}, 0.0);
  try {
    solve(problem(g, vec({"1/3"})));
    FAIL();
  } catch (const ResonanceError& e) {
    EXPECT_EQ(e.modes(), (std::vector<MultiIndex>{{-6}, {3}}));
  }
  CoefficientField ok(1);
  ok.set({1}, 1.0);
  ok.set({3}, 0.0);
  const auto sol = solve(problem(ok, vec({"1/3"})));
  EXPECT_EQ(sol.diagnostics.dropped_modes, 1u);
  EXPECT_FALSE(sol.f.contains({3}));
  EXPECT_EQ(sol.diagnostics.min_divisor, 0.0);
}

TEST(Solve, FloatingResonanceUsesTolerance) {
  CoefficientField g(1);
  g.set({1}, 1.0);
  auto p = problem(g, {PrecisionReal::approximate(BigRational(1, 10000000000000LL), 128)});
  EXPECT_THROW(solve(p), ResonanceError);
  // The same value given exactly is decided by exact arithmetic.
  EXPECT_NO_THROW(solve(problem(g, vec({"1e-13"}))));
  p.options.resonance_tol = 1e-15;
  EXPECT_NO_THROW(solve(p));
}

TEST(Solve, Validation) {
  CoefficientField g(2);
  g.set({1, 0}, 1.0);
  EXPECT_THROW(solve(problem(g, vec({"golden"}))), DimensionMismatchError);
  auto p = problem(CoefficientField(1), vec({"golden"}));
  p.options.sign = 0;
  EXPECT_THROW(solve(p), DomainError);
}

TEST(Solve, SignFlagSolvesTheOtherConvention) {
  auto rng = oracle::rng(54);
  const auto u = vec({"sqrt(2)"});
  const auto f = random_field(rng, 1, 10, 8);
  const auto g = coboundary_from(f, u, -1);
  auto p = problem(g, u);
  p.options.sign = -1;
  const auto sol = solve(p);
  EXPECT_LT(max_abs_difference(sol.f, f), 1e-12);
  EXPECT_LE(residual(sol.f, g, u, 17, -1), 1e-12);
  EXPECT_GT(residual(sol.f, g, u, 17, 1), 1e-3);
}

TEST(Residual, Examples) {
  const auto u = vec({"1/4"});
  EXPECT_EQ(residual(CoefficientField(1), CoefficientField(1), u, 1), 0.0);
  CoefficientField g(1);
  g.set({1}, 1.0);
  const auto sol = solve(problem(g, u));
  EXPECT_LE(residual(sol.f, g, u, 3), 1e-12);
  EXPECT_THROW(residual(sol.f, g, u, 2), DomainError);

  auto rng = oracle::rng(55);
  const auto ug = vec({"golden"});
  for (int i = 0; i < 20; ++i) {
    const auto gg = random_field(rng, 1, 10, 10);
    auto s = solve(problem(gg, ug));
    const auto k = s.f.begin()->first;
    s.f.set(k, s.f.at(k) + 1e-3);
    EXPECT_GE(residual(s.f, gg, ug, 21), 1e-4);
  }
}

TEST(Residual, MatchesPointwiseEvaluation) {
  // f(x) - f(x + u) - g(x) evaluated naively at grid points.
  auto rng = oracle::rng(56);
  const auto u = vec({"3/10"});
  const auto f = random_field(rng, 1, 6, 5);
  const auto g = random_field(rng, 1, 6, 5);
  double worst = 0.0;
  for (int j = 0; j < 11; ++j) {
    const double x = j / 11.0;
    Complex v{};
    for (const auto& [k, c] : f) v += c * (cis(k[0] * x) - cis(k[0] * (x + 0.3)));
    for (const auto& [k, c] : g) v -= c * cis(k[0] * x);
    worst = std::max(worst, std::abs(v));
  }
  EXPECT_NEAR(residual(f, g, u, 11), worst, 1e-12);
}

TEST(CoboundaryProperties, Linearity) {
  auto rng = oracle::rng(57);
  const auto u = vec({"golden", "pi"});
  for (int i = 0; i < 20; ++i) {
    const auto g1 = random_field(rng, 2, 15, 8), g2 = random_field(rng, 2, 15, 8);
    const auto s = solve(problem(g1 + g2, u)).f;
    EXPECT_LT(max_abs_difference(s, solve(problem(g1, u)).f + solve(problem(g2, u)).f), 1e-12);
  }
}

TEST(CoboundaryProperties, TranslationEquivariance) {
  auto rng = oracle::rng(58);
  const auto u = vec({"golden"});
  for (int i = 0; i < 20; ++i) {
    const auto g = random_field(rng, 1, 12, 10);
    const double v = oracle::uniform_real(rng, 0, 1);
    CoefficientField gv(1);
    for (const auto& [k, c] : g) gv.set(k, c * cis(k[0] * v));
    const auto f = solve(problem(g, u)).f;
    CoefficientField fv(1);
    for (const auto& [k, c] : f) fv.set(k, c * cis(k[0] * v));
    EXPECT_LT(max_abs_difference(solve(problem(gv, u)).f, fv), 1e-12);
  }
}

TEST(CoboundaryProperties, RoundTripBothWays) {
  auto rng = oracle::rng(59);
  const auto u = vec({"sqrt(3)"});
  for (int i = 0; i < 30; ++i) {
    const auto g = random_field(rng, 1, 20, 30);
    EXPECT_LT(max_abs_difference(coboundary_from(solve(problem(g, u)).f, u), g), 1e-12);
  }
}

TEST(CoboundaryProperties, ResidualBound) {
  auto rng = oracle::rng(60);
  const auto u = vec({"golden"});
  for (int i = 0; i < 20; ++i) {
    const auto g = random_field(rng, 1, 40, 64);
    const auto sol = solve(problem(g, u));
    ASSERT_GE(sol.diagnostics.min_divisor, 1e-6);
    ASSERT_TRUE(sol.diagnostics.residual_sup.has_value());
    EXPECT_LE(*sol.diagnostics.residual_sup, 1e-9 * g.l1_norm());
  }
}

TEST(CoboundaryProperties, HermitianSymmetryPreserved) {
  auto rng = oracle::rng(61);
  for (const auto& u : {vec({"golden"}), vec({"sqrt(2)", "e"})}) {
    for (int i = 0; i < 20; ++i) {
      const auto g = hermitian(random_field(rng, u.size(), 10, 12));
      const auto f = solve(problem(g, u)).f;
      for (const auto& [k, v] : f) {
        MultiIndex neg = k;
        for (auto& c : neg) c = -c;
        EXPECT_LT(std::abs(f.at(neg) - std::conj(v)), 1e-13);
      }
    }
  }
}

TEST(SobolevLoss, Examples) {
  const auto u = vec({"golden"});
  const auto zero = solve(problem(CoefficientField(1), u));
  const auto loss0 = sobolev_loss(zero, CoefficientField(1), {0.0, 1.0}, std::nullopt);
  for (const auto& r : loss0.rows) {
    EXPECT_EQ(r.f_norm, 0.0);
    EXPECT_EQ(r.g_norm, 0.0);
  }
  EXPECT_FALSE(loss0.bound_checked);
  EXPECT_FALSE(loss0.note.empty());

  auto rng = oracle::rng(62);
  const auto g = random_field(rng, 1, 20, 20);
  const auto sol = solve(problem(g, u));
  const auto loss = sobolev_loss(sol, g, {0.0, 0.5, 2.0}, std::nullopt);
  EXPECT_NEAR(loss.rows[0].f_norm, sol.f.l2_norm(), 1e-14);
  EXPECT_NEAR(loss.rows[0].g_norm, g.l2_norm(), 1e-14);
  EXPECT_NEAR(*loss.rows[0].sequence_norm, sol.f.l2_norm(), 1e-10);
  EXPECT_NEAR(*loss.rows[2].sequence_norm, sobolev_norm(sol.f, 2.0), 0.0);
}

TEST(SobolevLoss, DivisorBoundHoldsCoefficientwise) {
  const auto u = vec({"golden"});
  const auto ev = evidence_from(classify(u, 100000, {1.0}));
  ASSERT_TRUE(ev.has_value());
  EXPECT_EQ(ev->s, 1.0);
  auto rng = oracle::rng(63);
  for (int i = 0; i < 20; ++i) {
    const auto g = random_field(rng, 1, 30, 64);
    const auto sol = solve(problem(g, u));
    const auto loss = sobolev_loss(sol, g, {0.0, 1.0}, ev);
    EXPECT_TRUE(loss.bound_checked);
    EXPECT_TRUE(loss.bound_holds);
    EXPECT_LE(loss.worst_bound_ratio, 1.0 + 1e-12);
  }
}

TEST(SobolevLoss, ViolatedBoundIsReported) {
  CoefficientField g(1);
  g.set({5}, 1.0);
  const auto sol = solve(problem(g, vec({"golden"})));
  const auto loss = sobolev_loss(sol, g, {0.0}, DivisorEvidence{1.0, 100.0});
  EXPECT_TRUE(loss.bound_checked);
  EXPECT_FALSE(loss.bound_holds);
  EXPECT_EQ(loss.worst_k, MultiIndex{5});
}

TEST(Solve, LiouvilleRegimeIsFlaggedFormal) {
  CoefficientField g(1);
  for (std::int64_t k = 1; k <= 100; ++k) g.set({k}, 1.0 / static_cast<double>(k * k));
  auto p = problem(g, vec({"liouville"}, 128));
  p.options.classify_kmax = 1000000;
  const auto sol = solve(p);
  ASSERT_TRUE(sol.diagnostics.regime.has_value());
  EXPECT_EQ(*sol.diagnostics.regime, Verdict::kLiouvilleEvidence);
  EXPECT_TRUE(sol.diagnostics.formal);
  EXPECT_FALSE(sol.diagnostics.note.empty());
  ASSERT_FALSE(sol.diagnostics.truncation_norms.empty());
  EXPECT_EQ(sol.diagnostics.truncation_norms.back().radius, 100);
  for (std::size_t i = 1; i < sol.diagnostics.truncation_norms.size(); ++i)
    EXPECT_GE(sol.diagnostics.truncation_norms[i].norm, sol.diagnostics.truncation_norms[i - 1].norm);

  auto q = problem(g, vec({"golden"}));
  q.options.classify_kmax = 1000;
  const auto dio = solve(q);
  EXPECT_EQ(*dio.diagnostics.regime, Verdict::kDiophantineEvidence);
  EXPECT_FALSE(dio.diagnostics.formal);
}

TEST(Solve, TruncationRadiusDropsHighModes) {
  CoefficientField g(1);
  g.set({1}, 1.0);
  g.set({50}, 1.0);
  auto p = problem(g, vec({"golden"}));
  p.options.truncation_radius = 10;
  const auto sol = solve(p);
  EXPECT_EQ(sol.f.size(), 1u);
}
