#include <gtest/gtest.h>

#include <cmath>

#include <minkspec/observability.hpp>
#include <minkspec/oracle.hpp>
#include <minkspec/secular.hpp>

#include "instances.hpp"

namespace minkspec {
namespace {

BorderedPencil diagonal_pencil(std::vector<double> diag, std::vector<Complex> u, double a) {
  return validate_problem(CMatrix::diagonal(diag), u, a);
}

BorderedPencil four_pole_example(double a) {
  return diagonal_pencil({1, 2, 3, 4}, {0.1, std::sqrt(0.02), std::sqrt(0.001), 1.0}, a);
}

TEST(Observability, FourPoleExampleIsObservable) {
  const auto report = hautus_test(four_pole_example(0.0));
  EXPECT_TRUE(report.observable);
  ASSERT_EQ(report.entries.size(), 4u);
  for (const auto& e : report.entries) EXPECT_TRUE(e.observable);

  const auto k = kalman_reduce(four_pole_example(0.0));
  EXPECT_TRUE(k.observable);
  EXPECT_TRUE(k.detached_spectrum.empty());
  EXPECT_EQ(k.reduced, to_spectral_form(four_pole_example(0.0)));
}

TEST(Observability, RepeatedEigenvalueFails) {
  const auto report = hautus_test(diagonal_pencil({1, 1}, {1.0, 0.0}, 0.0));
  EXPECT_FALSE(report.observable);
  ASSERT_EQ(report.entries.size(), 1u);
  EXPECT_EQ(report.entries[0].eigenvalue, 1.0);
  EXPECT_EQ(report.entries[0].multiplicity, 2);
  EXPECT_FALSE(report.entries[0].observable);
}

TEST(Observability, FailsOnlyAtTheHiddenEigenvalue) {
  const auto p = diagonal_pencil({1, 2}, {1.0, 0.0}, 0.0);
  const auto report = hautus_test(p);
  EXPECT_FALSE(report.observable);
  ASSERT_EQ(report.entries.size(), 2u);
  EXPECT_EQ(report.entries[0].eigenvalue, 2.0);
  EXPECT_FALSE(report.entries[0].observable);
  EXPECT_TRUE(report.entries[1].observable);
  // The explicit stacked 3x2 matrix agrees.
  EXPECT_EQ(hautus_stacked_rank(p, 2.0), 1u);
  EXPECT_EQ(hautus_stacked_rank(p, 1.0), 2u);
}

TEST(Observability, ZeroBorder) {
  const auto k = kalman_reduce(diagonal_pencil({2, -1}, {0.0, 0.0}, 0.5));
  EXPECT_FALSE(k.observable);
  EXPECT_EQ(k.unobservable_dimension, 2);
  EXPECT_EQ(k.detached_spectrum, (std::vector<double>{2, -1}));
  EXPECT_TRUE(k.reduced.poles.empty());
  const auto e = solve_spectrum(SecularFunction(k.reduced));
  ASSERT_EQ(e.values().size(), 1u);
  EXPECT_EQ(e.values()[0], Complex(0.5, 0.0));
}

TEST(Observability, RotatesRepeatedPlane) {
  const double r = 1.0 / std::sqrt(2.0);
  const auto p = diagonal_pencil({1, 1, 2}, {r, r, 1.0}, 0.0);
  const auto k = kalman_reduce(p);
  EXPECT_EQ(k.unobservable_dimension, 1);
  ASSERT_EQ(k.detached_spectrum.size(), 1u);
  EXPECT_NEAR(k.detached_spectrum[0], 1.0, 1e-14);
  ASSERT_EQ(k.reduced.poles.size(), 2u);
  EXPECT_NEAR(k.reduced.poles[0], 2.0, 1e-14);
  EXPECT_NEAR(k.reduced.poles[1], 1.0, 1e-14);
  EXPECT_NEAR(k.reduced.residues[0], 1.0, 1e-14);
  EXPECT_NEAR(k.reduced.residues[1], 1.0, 1e-14);

  std::vector<Complex> split = solve_spectrum(SecularFunction(k.reduced)).values();
  split.emplace_back(k.detached_spectrum[0], 0.0);
  EXPECT_LE(optimal_matching_distance(split, dense_spectrum(assemble_A_and_H(p).A)), 1e-8);
}

TEST(Observability, ReducedPencilRealizesObservablePart) {
  const double r = 1.0 / std::sqrt(2.0);
  const auto k = kalman_reduce(diagonal_pencil({1, 1, 2}, {r, r, 1.0}, 0.0));
  const auto q = reduced_pencil(k);
  EXPECT_EQ(q.n(), 3u);
  EXPECT_TRUE(kalman_reduce(q).observable);
}

TEST(Observability, SpectrumUnionOnPlantedPencils) {
  testing::Rng rng(31337);
  for (int trial = 0; trial < 40; ++trial) {
    const auto planted = testing::random_planted_pencil(rng);
    const auto& p = planted.pencil;
    const auto k = kalman_reduce(p);
    EXPECT_EQ(static_cast<std::size_t>(k.unobservable_dimension) + k.reduced.poles.size(), p.n() - 1);
    ASSERT_EQ(k.detached_spectrum.size(), planted.planted.size());
    for (std::size_t i = 0; i < k.detached_spectrum.size(); ++i)
      EXPECT_NEAR(k.detached_spectrum[i], planted.planted[i], 1e-9);

    const SecularFunction s(k.reduced);
    std::vector<Complex> split = solve_spectrum(s).values();
    for (double x : k.detached_spectrum) split.emplace_back(x, 0.0);
    std::vector<Complex> oracle = char_poly_roots_oracle(k.reduced);
    for (double x : k.detached_spectrum) oracle.emplace_back(x, 0.0);
    EXPECT_LE(optimal_matching_distance(split, oracle), 1e-8);

    // Retained poles are never eigenvalues of the observable part: drop one
    // dense eigenvalue per detached value and look at what is left.
    auto full = dense_spectrum(assemble_A_and_H(p).A);
    for (double x : k.detached_spectrum)
      full.erase(std::min_element(full.begin(), full.end(),
                                  [&](Complex l, Complex r) { return std::abs(l - x) < std::abs(r - x); }));
    for (double mu : k.reduced.poles) {
      double nearest = INFINITY;
      for (const auto& z : full) nearest = std::min(nearest, std::abs(z - mu));
      EXPECT_GT(nearest, 1e-8);
    }
  }
}

}  // namespace
}  // namespace minkspec
