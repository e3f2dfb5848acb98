#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qwsearch/errors.hpp"
#include "qwsearch/synth2d.hpp"
#include "support/oracles.hpp"

using qws::synthesize;
using std::numbers::pi;

TEST(Synthesize, ClosedForms) {
  const auto one = synthesize(1.0);
  EXPECT_EQ(one.p, 0);
  EXPECT_EQ(one.gamma, 0.0);
  EXPECT_EQ(qws::verify(one).infidelity, 0.0);

  const auto half = synthesize(0.5);
  ASSERT_EQ(half.p, 1);
  EXPECT_EQ(half.thetas[0], pi);
  EXPECT_EQ(half.gamma, pi);
  EXPECT_LT(qws::verify(half).infidelity, 1e-14);

  const auto tenth = synthesize(std::sin(pi / 10));
  ASSERT_EQ(tenth.p, 2);
  EXPECT_EQ(tenth.thetas[0], pi);
  EXPECT_EQ(tenth.thetas[1], pi);
  EXPECT_NEAR(tenth.gamma, 0.0, 1e-12);
}

TEST(Verify, DetectsCorruptedPhase) {
  auto sol = synthesize(0.5);
  sol.thetas[0] = pi + 0.1;
  EXPECT_GT(qws::verify(sol).infidelity, 1e-3);
}

TEST(Verify, ReportsPhaseMismatch) {
  auto sol = synthesize(0.5);
  EXPECT_LT(qws::verify(sol).phase_mismatch, 1e-12);
  sol.gamma += 0.5;
  EXPECT_NEAR(qws::verify(sol).phase_mismatch, 0.5, 1e-12);
}

TEST(Synthesize, Errors) {
  EXPECT_THROW(synthesize(0.0), qws::ValidationError);
  EXPECT_THROW(synthesize(1.5), qws::ValidationError);
  EXPECT_THROW(synthesize(-0.3), qws::ValidationError);
  EXPECT_THROW(synthesize(1.0 / std::sqrt(2.0)), qws::SolverError);
}

TEST(Synthesize, BitwiseDeterministic) {
  for (double c : {0.013, 0.2, 0.37, 0.61, 0.83, 0.97}) {
    const auto a = synthesize(c);
    const auto b = synthesize(c);
    EXPECT_EQ(a.p, b.p);
    EXPECT_EQ(a.thetas, b.thetas);
    EXPECT_EQ(a.gamma, b.gamma);
  }
}

TEST(Synthesize, AgreesWithIndependentProduct) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.01, 0.7);
  for (int i = 0; i < 60; ++i) {
    const double c = u(rng);
    const auto sol = synthesize(c);
    // The stated walk diag(+1,-1) is minus the reflection used internally.
    const Eigen::Vector2cd v = oracle::two_level_final(c, sol.thetas);
    const double sign = sol.p % 2 == 0 ? 1.0 : -1.0;
    EXPECT_NEAR(1.0 - std::norm(v(0)), 0.0, 1e-10) << c;
    const std::complex<double> expected = sign * std::polar(1.0, -sol.gamma);
    EXPECT_LT(std::abs(v(0) - expected), 1e-5) << c;
    EXPECT_LE(sol.residual, 1e-10);
    for (double t : sol.thetas) {
      EXPECT_GT(t, -pi);
      EXPECT_LE(t, pi);
    }
  }
}

TEST(Synthesize, WithinCapBelowHalf) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.01, 0.5);
  for (int i = 0; i < 100; ++i) {
    const double c = u(rng);
    const auto sol = synthesize(c);
    EXPECT_LE(sol.p, qws::query_cap(c)) << c;
    EXPECT_LE(qws::verify(sol).infidelity, 1e-10);
  }
}

TEST(MinimalQueries, Table) {
  EXPECT_EQ(qws::minimal_query_count(1.0), 0);
  EXPECT_EQ(qws::minimal_query_count(0.5), 1);
  EXPECT_EQ(qws::minimal_query_count(std::sin(pi / 10)), 2);
  EXPECT_EQ(qws::minimal_query_count(0.01), 79);
  EXPECT_EQ(qws::minimal_query_count(0.7), 39);
  EXPECT_FALSE(qws::minimal_query_count(1.0 / std::sqrt(2.0)).has_value());
  EXPECT_THROW(qws::minimal_query_count(0.0), qws::ValidationError);
}

TEST(MinimalQueries, NonincreasingUpToHalf) {
  int prev = 1 << 30;
  for (int i = 0; i <= 400; ++i) {
    const double c = 0.01 + (0.5 - 0.01) * i / 400.0;
    const int p = *qws::minimal_query_count(c);
    EXPECT_LE(p, prev) << c;
    prev = p;
  }
}

TEST(MinimalQueries, NotMonotoneAboveHalf) {
  // Near 1/sqrt(2) the reflection nearly maps the start axis to its antipode,
  // so the count grows again even though the overlap grows.
  const int low = *qws::minimal_query_count(0.6);
  const int high = *qws::minimal_query_count(0.705);
  EXPECT_GT(high, low);
  EXPECT_GT(high, qws::query_cap(0.705));
}

TEST(MinimalQueries, AgreesWithSolver) {
  for (double c : {0.05, 0.15, 0.31, 0.45, 0.55, 0.8, 0.9}) {
    const auto sol = synthesize(c);
    EXPECT_EQ(sol.p, *qws::minimal_query_count(c)) << c;
  }
}

TEST(CanonicalPhase, Range) {
  EXPECT_EQ(qws::canonical_phase(-pi), pi);
  EXPECT_EQ(qws::canonical_phase(pi), pi);
  EXPECT_EQ(qws::canonical_phase(3 * pi), pi);
  EXPECT_NEAR(qws::canonical_phase(2 * pi + 0.25), 0.25, 1e-15);
  EXPECT_EQ(std::signbit(qws::canonical_phase(-0.0)), false);
  EXPECT_EQ(qws::canonical_phase(2 * pi), 0.0);
}
