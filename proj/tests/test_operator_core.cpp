#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kac/block_operator.hpp"
#include "kac/spectral.hpp"

using namespace kac;
using MatrixXc = BlockOperator::MatrixType;

namespace {

BlockOperator single(const MatrixXc& m) { return BlockOperator(std::vector<MatrixXc>{m}); }

MatrixXc diag(std::initializer_list<double> v) {
  Eigen::VectorXd d(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) d(i++) = x;
  return d.cast<cplx>().asDiagonal();
}

double dist(const BlockOperator& a, const BlockOperator& b) { return max_abs(BlockOperator(a - b)); }

const std::vector<Dims> kProfiles = {{3}, {1, 2, 3}, {1, 1, 1, 1}, {4, 2}};

}  // namespace

TEST(BlockOperator, AdjointAndProductLaws) {
  std::mt19937_64 rng(11);
  for (const auto& dims : kProfiles) {
    const auto x = BlockOperator::Gaussian(dims, rng);
    const auto y = BlockOperator::Gaussian(dims, rng);
    EXPECT_LT(dist(x.adjoint().adjoint(), x), 1e-15);
    EXPECT_LT(dist(BlockOperator(x * y).adjoint(), y.adjoint() * x.adjoint()), 1e-12);
    EXPECT_EQ(BlockOperator(x + y).dims(), dims);
  }
}

TEST(BlockOperator, CoefficientRoundTrip) {
  std::mt19937_64 rng(2);
  const Dims dims{1, 2, 3};
  const auto x = BlockOperator::Gaussian(dims, rng);
  EXPECT_EQ(x.coefficients().size(), basis_size(dims));
  EXPECT_EQ(dist(BlockOperator::FromCoefficients(dims, x.coefficients()), x), 0.0);
}

TEST(PolarDecompose, NilpotentExample) {
  MatrixXc x(2, 2);
  x << 0, 2, 0, 0;
  const auto pd = polar_decompose(single(x));
  MatrixXc w(2, 2);
  w << 0, 1, 0, 0;
  EXPECT_LT(dist(pd.partial_isometry, single(w)), 1e-14);
  EXPECT_LT(dist(pd.modulus, single(diag({0, 2}))), 1e-14);
}

TEST(PolarDecompose, ZeroOperator) {
  const auto z = BlockOperator::Zero({2, 1});
  const auto pd = polar_decompose(z);
  EXPECT_EQ(max_abs(pd.partial_isometry), 0.0);
  EXPECT_EQ(max_abs(pd.modulus), 0.0);
}

TEST(PolarDecompose, RandomReconstruction) {
  std::mt19937_64 rng(5);
  double worst = 0;
  for (const auto& dims : kProfiles)
    for (int s = 0; s < 1000; ++s) {
      const auto x = BlockOperator::Gaussian(dims, rng);
      const auto pd = polar_decompose(x);
      worst = std::max(worst, dist(pd.partial_isometry * pd.modulus, x));
      worst = std::max(worst, dist(pd.partial_isometry.adjoint() * pd.partial_isometry, range_projection(pd.modulus)));
    }
  EXPECT_LT(worst, 1e-9);
}

TEST(RangeProjection, Examples) {
  EXPECT_LT(dist(range_projection(single(diag({1, 0, 2}))), single(diag({1, 0, 1}))), 1e-14);
  MatrixXc ones = MatrixXc::Constant(2, 2, 1.0);
  EXPECT_LT(dist(range_projection(single(ones)), single(ones / 2.0)), 1e-14);
}

TEST(RangeProjection, MatchesPolarPart) {
  std::mt19937_64 rng(8);
  for (const auto& dims : kProfiles) {
    // rank-deficient where a block has size > 1: last column of each block zeroed
    std::vector<MatrixXc> blocks;
    const auto g = BlockOperator::Gaussian(dims, rng);
    for (const auto& b : g.blocks()) {
      MatrixXc m = b;
      if (m.cols() > 1) m.col(m.cols() - 1).setZero();
      blocks.push_back(m);
    }
    const BlockOperator x(std::move(blocks));
    const auto y = BlockOperator::Gaussian(dims, rng);
    for (const auto& z : {x, y}) {
      const auto r = range_projection(z);
      const auto w = polar_decompose(z).partial_isometry;
      EXPECT_LT(dist(r, w * w.adjoint()), 1e-9);
      EXPECT_TRUE(is_projection(r));
      EXPECT_LT(dist(r * z, z), 1e-9);
    }
  }
}

TEST(PositiveFunction, Examples) {
  const auto half = single(diag({0.5, 0.5}));
  const double h = 0.5 * std::log(0.5);
  EXPECT_LT(dist(positive_function(half, PositiveFunction::xlogx()), single(diag({h, h}))), 1e-15);
  const auto id = BlockOperator::Identity({2, 3});
  EXPECT_LT(dist(positive_function(id, PositiveFunction::power(0.5)), id), 1e-14);
  EXPECT_LT(dist(positive_function(single(diag({4, 9})), PositiveFunction::power(0.5)), single(diag({2, 3}))), 1e-14);
}

TEST(PositiveFunction, ZeroEigenvaluesInXLogX) {
  const auto p = single(diag({1, 0}));
  EXPECT_LT(max_abs(positive_function(p, PositiveFunction::xlogx())), 1e-15);
}

TEST(PositiveFunction, RejectsNegativeSpectrum) {
  try {
    positive_function(single(diag({1, -0.5})), PositiveFunction::power(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPositive);
  }
  EXPECT_THROW(PositiveFunction::power(0), Error);
}

TEST(PositiveFunction, PowerInverseRoundTrip) {
  std::mt19937_64 rng(13);
  double worst = 0;
  for (const auto& dims : kProfiles)
    for (double p : {0.5, 4.0 / 3.0, 3.0}) {
      const auto g = BlockOperator::Gaussian(dims, rng);
      const auto x = BlockOperator(g.adjoint() * g + BlockOperator::Identity(dims) * cplx(0.1));
      const auto y = positive_function(positive_function(x, PositiveFunction::power(p)), PositiveFunction::power(1 / p));
      worst = std::max(worst, dist(x, y) / max_abs(x));
    }
  EXPECT_LT(worst, 1e-8);
}

TEST(PartialIsometry, Examples) {
  const auto mu = is_partial_isometry(single(diag({3, 3, 0})));
  ASSERT_TRUE(mu);
  EXPECT_NEAR(*mu, 3, 1e-12);
  EXPECT_FALSE(is_partial_isometry(single(diag({1, 2}))));

  std::mt19937_64 rng(4);
  const auto g = BlockOperator::Gaussian({3, 2}, rng);
  const auto u = polar_decompose(g).partial_isometry;
  const auto mu_u = is_partial_isometry(u);
  ASSERT_TRUE(mu_u);
  EXPECT_NEAR(*mu_u, 1, 1e-12);
}

TEST(PartialIsometry, ZeroThrows) {
  try {
    is_partial_isometry(BlockOperator::Zero({2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroOperator);
  }
}

TEST(ProjectionHelpers, MultipleAndDomination) {
  const auto p = single(diag({1, 1, 0}));
  const auto mu = projection_multiple(BlockOperator(p * cplx(2.5)));
  ASSERT_TRUE(mu);
  EXPECT_NEAR(std::abs(*mu - cplx(2.5)), 0, 1e-12);
  EXPECT_FALSE(projection_multiple(single(diag({1, 2, 0}))));
  EXPECT_TRUE(projection_dominated(single(diag({1, 0, 0})), p));
  EXPECT_FALSE(projection_dominated(single(diag({0, 0, 1})), p));
}

TEST(ToleranceConfig, Validation) {
  EXPECT_NO_THROW(ToleranceConfig{}.validate());
  ToleranceConfig bad;
  bad.rank_tol = 1e-6;
  bad.eq_tol = 1e-9;
  EXPECT_THROW(bad.validate(), Error);
  EXPECT_LT(ToleranceConfig::with_eq_tol(1e-11).rank_tol, 1e-11);
}
