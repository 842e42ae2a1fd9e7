#include <gtest/gtest.h>

#include <cmath>

#include <minkspec/error.hpp>
#include <minkspec/model.hpp>

#include "instances.hpp"

namespace minkspec {
namespace {

const double kRootHalf = 1.0 / std::sqrt(2.0);

BorderedPencil two_pole_pencil() {
  const CMatrix j{{1.0, 0.0}, {0.0, -1.0}};
  const std::vector<Complex> u{kRootHalf, kRootHalf};
  return validate_problem(j, u, 0.0);
}

ErrorKind kind_of(const auto& call) {
  try {
    call();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

TEST(Model, AcceptsSmallIndefiniteExample) {
  const auto p = two_pole_pencil();
  EXPECT_EQ(p.n(), 3u);
  EXPECT_EQ(p.a(), 0.0);
}

TEST(Model, AcceptsFourPoleExample) {
  const CMatrix j = CMatrix::diagonal(std::vector<double>{1, 2, 3, 4});
  const std::vector<Complex> u{0.1, std::sqrt(0.02), std::sqrt(0.001), 1.0};
  EXPECT_EQ(validate_problem(j, u, 0.0).n(), 5u);
}

TEST(Model, RejectsSkewMatrix) {
  const CMatrix j{{0.0, Complex(0, 1)}, {Complex(0, 1), 0.0}};
  const std::vector<Complex> u{1.0, 1.0};
  EXPECT_EQ(kind_of([&] { validate_problem(j, u, 0.0); }), ErrorKind::NotHermitian);
}

TEST(Model, RejectsShapeAndNonFinite) {
  const CMatrix j{{1.0, 0.0}, {0.0, 2.0}};
  const std::vector<Complex> short_u{1.0};
  EXPECT_EQ(kind_of([&] { validate_problem(j, short_u, 0.0); }), ErrorKind::DimensionMismatch);
  const std::vector<Complex> u{1.0, 1.0};
  EXPECT_EQ(kind_of([&] { validate_problem(j, u, NAN); }), ErrorKind::NonFiniteEntry);
  const std::vector<std::vector<Complex>> ragged{{1.0, 0.0}, {0.0}};
  EXPECT_EQ(kind_of([&] { validate_problem(ragged, u, 0.0); }), ErrorKind::DimensionMismatch);
}

TEST(Model, SymmetrizesRoundoffOnly) {
  CMatrix j{{1.0, Complex(0.5, 0.25)}, {Complex(0.5, -0.25), 2.0}};
  j(0, 1) += 1e-13;
  const std::vector<Complex> u{1.0, 1.0};
  const auto p = validate_problem(j, u, 0.0);
  EXPECT_EQ(p.J()(0, 1), std::conj(p.J()(1, 0)));
  j(0, 1) += 1e-6;
  EXPECT_EQ(kind_of([&] { validate_problem(j, u, 0.0); }), ErrorKind::NotHermitian);
}

TEST(Model, ValidationIsIdempotent) {
  testing::Rng rng(11);
  const auto p = testing::pencil_from_eigendata(rng, {3, 1, -2}, {1.0, Complex(0, 2), 0.5}, 1.5);
  const auto again = validate_problem(p.J().entries(), p.u(), p.a());
  EXPECT_EQ(p, again);
}

TEST(Model, AssemblesExampleMatrix) {
  const auto [A, H] = assemble_A_and_H(two_pole_pencil());
  const CMatrix expected{{1.0, 0.0, kRootHalf}, {0.0, -1.0, kRootHalf}, {-kRootHalf, -kRootHalf, 0.0}};
  EXPECT_EQ(A, expected);
  EXPECT_EQ(H, CMatrix::diagonal(std::vector<double>{1, 1, -1}));
}

TEST(Model, DecoupledPairIsScalarTimesIdentity) {
  const CMatrix j{{2.5}};
  const std::vector<Complex> u{0.0};
  const auto [A, H] = assemble_A_and_H(validate_problem(j, u, 2.5));
  EXPECT_EQ(A, (CMatrix{{2.5, 0.0}, {0.0, 2.5}}));
  EXPECT_EQ(H, CMatrix::diagonal(std::vector<double>{1, -1}));
}

TEST(Model, DegenerateOrderOne) {
  const auto p = validate_problem(CMatrix(0, 0), std::span<const Complex>{}, 4.0);
  EXPECT_EQ(p.n(), 1u);
  const auto [A, H] = assemble_A_and_H(p);
  EXPECT_EQ(A, CMatrix{{4.0}});
  EXPECT_EQ(H, CMatrix{{-1.0}});
}

TEST(Model, HSelfadjointExactlyOnRandomPencils) {
  testing::Rng rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> mu{testing::uniform(rng, -3, 3)};
    for (int k = 0; k < 4; ++k) mu.push_back(mu.back() - testing::uniform(rng, 0.1, 2));
    std::vector<Complex> c;
    for (std::size_t k = 0; k < mu.size(); ++k) c.emplace_back(testing::uniform(rng, -1, 1), testing::uniform(rng, -1, 1));
    const auto [A, H] = assemble_A_and_H(testing::pencil_from_eigendata(rng, mu, c, testing::uniform(rng, -5, 5)));
    EXPECT_EQ(H * A, A.adjoint() * H);
  }
}

}  // namespace
}  // namespace minkspec
