#include <gtest/gtest.h>

#include <cmath>

#include <minkspec/error.hpp>
#include <minkspec/hermitian.hpp>
#include <minkspec/oracle.hpp>
#include <minkspec/secular.hpp>
#include <minkspec/signs.hpp>
#include <minkspec/sweep.hpp>

#include "instances.hpp"

namespace minkspec {
namespace {

SpectralForm four_pole(double a) { return SpectralForm::from_poles({4, 3, 2, 1}, {1, 0.001, 0.02, 0.01}, a); }
SpectralForm two_pole() { return SpectralForm::from_poles({1, -1}, {0.5, 0.5}, 0.0); }

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out;
  for (int k = 0; k < count; ++k) out.push_back(lo + (hi - lo) * k / (count - 1));
  return out;
}

TEST(Oracle, TripleRootPolynomial) {
  const auto roots = char_poly_roots_oracle(two_pole());
  ASSERT_EQ(roots.size(), 3u);
  // p = z^3, so the computed roots scatter like eps^(1/3).
  for (const auto& z : roots) EXPECT_LT(std::abs(z), 1e-4);
  const auto pv = char_poly_product_form(two_pole(), Complex(0.3, 0.0));
  EXPECT_NEAR(pv.value.real(), 0.027, 1e-15);
}

TEST(Oracle, ComplexPairPolynomial) {
  auto roots = char_poly_roots_oracle(SpectralForm::from_poles({0.0}, {1.0}, 0.0));
  const std::vector<Complex> expected{Complex(0, 1), Complex(0, -1)};
  EXPECT_LE(optimal_matching_distance(roots, expected), 1e-14);
}

TEST(Oracle, AgreesWithSolverAndDenseEigensolver) {
  const SecularFunction s(four_pole(0.0));
  const auto solved = solve_spectrum(s).values();
  EXPECT_LE(optimal_matching_distance(solved, char_poly_roots_oracle(s.form())), 1e-8);
  const auto A = assemble_A_and_H(to_pencil(s.form())).A;
  EXPECT_LE(optimal_matching_distance(solved, dense_spectrum(A)), 1e-8);
  for (double x : {-2.3, 0.5, 3.7, 9.0}) {
    const Complex det = dense_char_poly(A, x);
    EXPECT_NEAR(std::abs(char_poly_product_form(s.form(), x).value - det), 0.0, 1e-12 * std::max(1.0, std::abs(det)));
  }
}

TEST(Oracle, MatchingHandlesPermutations) {
  const std::vector<Complex> lhs{1.0, 2.0, Complex(0, 3)};
  const std::vector<Complex> rhs{Complex(0, 3), 2.0 + 1e-3, 1.0};
  EXPECT_NEAR(optimal_matching_distance(lhs, rhs), 1e-3, 1e-15);
  EXPECT_THROW(optimal_matching_distance(lhs, std::vector<Complex>{1.0}), Error);
  const auto assignment = min_cost_assignment({{4, 1, 3}, {2, 0, 5}, {3, 2, 2}});
  EXPECT_EQ(assignment, (std::vector<std::size_t>{1, 0, 2}));
}

TEST(Oracle, NuVanishesAtEigenvalues) {
  const auto p = to_pencil(four_pole(0.0));
  for (const auto& z : solve_spectrum(SecularFunction(four_pole(0.0))).values()) {
    const auto nus = nu_values(p, z.real());
    double nearest = INFINITY;
    for (double nu : nus) nearest = std::min(nearest, std::abs(nu));
    EXPECT_LT(nearest, 1e-9);
  }
}

TEST(Oracle, TripleZeroOfOneCurve) {
  const auto p = to_pencil(two_pole());
  const auto grid = linspace(-0.2, 0.2, 81);
  const auto samples = nu_curves(p, grid);
  const auto curves = curves_from_samples(samples);
  ASSERT_EQ(curves.size(), 3u);
  int vanishing = 0;
  for (const auto& c : curves) {
    if (std::abs(c[40]) > 1e-9) continue;
    ++vanishing;
    // A triple zero: odd, and flat to second order.
    EXPECT_LT(c[39] * c[41], 0.0);
    EXPECT_LT(std::abs(c[41]), 1e-4);
  }
  EXPECT_EQ(vanishing, 1);
  EXPECT_EQ(nu_zero_crossings(p, grid).size(), 1u);
}

TEST(Oracle, SmallestCrossingHasNegativeSlope) {
  const auto form = four_pole(0.0);
  const SecularFunction s(form);
  const auto e = solve_spectrum(s);
  const double smallest = e.records.back().value.real();
  const auto check = nu_derivative_check(to_pencil(form), s, smallest);
  EXPECT_TRUE(check.agree);
  EXPECT_LT(check.numeric, 0.0);
  const double largest = e.records.front().value.real();
  const auto top = nu_derivative_check(to_pencil(form), s, largest);
  EXPECT_TRUE(top.agree);
  EXPECT_GT(top.numeric, 0.0);
}

TEST(Oracle, FarEigenvalueSlopeApproachesMinusOne) {
  const auto form = SpectralForm::from_poles({1, 0}, {1e-3, 1e-3}, 50.0);
  const SecularFunction s(form);
  const double x = solve_spectrum(s).records.front().value.real();
  const auto check = nu_derivative_check(to_pencil(form), s, x);
  EXPECT_TRUE(check.agree);
  EXPECT_NEAR(check.numeric, -1.0, 1e-5);
}

TEST(Oracle, DegenerateSlopeIsMinusOne) {
  const auto form = SpectralForm::from_poles({}, {}, 2.0);
  const auto check = nu_derivative_check(to_pencil(form), SecularFunction(form), 2.0);
  EXPECT_TRUE(check.agree);
  EXPECT_NEAR(check.numeric, -1.0, 1e-9);
  EXPECT_EQ(nu_values(to_pencil(form), 0.5), std::vector<double>{1.5});
}

TEST(Oracle, CurvatureAtDoubles) {
  for (const auto& c : critical_a_values(four_pole(0.0))) {
    const SecularFunction s(four_pole(c.a_star));
    const auto check = nu_second_derivative_check(to_pencil(s.form()), s, c.tangency_point);
    EXPECT_TRUE(check.agree) << "t=" << c.tangency_point << " numeric " << check.numeric << " analytic "
                             << check.analytic;
  }
}

TEST(Oracle, JordanRanks) {
  const auto triple = jordan_certificate(to_pencil(two_pole()), 0.0);
  EXPECT_EQ(triple.ranks, (std::array<std::size_t, 3>{2, 1, 0}));
  EXPECT_EQ(triple.block_size, 3);
  EXPECT_TRUE(triple.nonderogatory);

  double a_star = 0.0, t = 0.0;
  for (const auto& c : critical_a_values(four_pole(0.0)))
    if (c.resulting_case == CaseLabel::C4c && std::abs(c.tangency_point - 1.83895) < 1e-3) {
      a_star = c.a_star;
      t = c.tangency_point;
    }
  const auto p = to_pencil(four_pole(a_star));
  EXPECT_EQ(jordan_rank_probe(p, t, 1), 4u);
  EXPECT_EQ(jordan_rank_probe(p, t, 2), 3u);
  EXPECT_EQ(jordan_certificate(p, t).block_size, 2);

  const auto simple = to_pencil(four_pole(0.0));
  for (const auto& z : solve_spectrum(SecularFunction(four_pole(0.0))).values())
    EXPECT_EQ(jordan_rank_probe(simple, z, 1), 4u);
  EXPECT_EQ(jordan_certificate(simple, 10.0).block_size, 0);
}

TEST(Oracle, NuCurvesArePermutationConsistent) {
  testing::Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const auto form = testing::random_form(rng, 5, 0.5);
    const auto grid = linspace(form.poles.back() - 2.0, form.poles.front() + 2.0, 301);
    const auto samples = nu_curves(to_pencil(form), grid);
    for (const auto& sm : samples) {
      EXPECT_EQ(sm.nus.size(), form.order());
      auto sorted = sm.matching;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t c = 0; c < sorted.size(); ++c) EXPECT_EQ(sorted[c], c);
    }
  }
}

}  // namespace
}  // namespace minkspec
