#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <random>

#include "kac/builders.hpp"
#include "kac/dual_pair.hpp"
#include "kac/io.hpp"
#include "oracles.hpp"

using namespace kac;
using MatrixXc = BlockOperator::MatrixType;

namespace {

double dist(const BlockOperator& a, const BlockOperator& b) { return max_abs(BlockOperator(a - b)); }

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ParseError;  // sentinel: nothing thrown
}

Dims sorted(Dims d) {
  std::sort(d.begin(), d.end());
  return d;
}

// Given two families of matrices indexed by the group, returns the best
// residual max_g |U a_g U^* - b_g| over unitaries U obtained by averaging
// b_g X a_g^* for a few random X. Irreducible equivalent families give ~0.
double intertwiner_residual(const std::vector<MatrixXc>& a, const std::vector<MatrixXc>& b, std::mt19937_64& rng) {
  const Index d = a.front().rows();
  std::normal_distribution<double> g;
  double best = 1e300;
  for (int trial = 0; trial < 4; ++trial) {
    MatrixXc x(d, d);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) x(i, j) = cplx(g(rng), g(rng));
    MatrixXc u = MatrixXc::Zero(d, d);
    for (std::size_t k = 0; k < a.size(); ++k) u += b[k] * x * a[k].adjoint();
    Eigen::JacobiSVD<MatrixXc> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.singularValues()(d - 1) < 1e-8 * svd.singularValues()(0)) continue;
    u = svd.matrixU() * svd.matrixV().adjoint();
    double r = 0;
    for (std::size_t k = 0; k < a.size(); ++k) r = std::max(r, (u * a[k] * u.adjoint() - b[k]).cwiseAbs().maxCoeff());
    best = std::min(best, r);
  }
  return best;
}

std::vector<MatrixXc> block_family(const std::vector<BlockOperator>& lambdas, std::size_t j) {
  std::vector<MatrixXc> out;
  for (const auto& l : lambdas) out.push_back(l.block(j));
  return out;
}

}  // namespace

TEST(FunctionAlgebra, Z2Comultiplication) {
  const auto k = function_algebra(cyclic_group(2));
  EXPECT_EQ(k.dims(), (Dims{1, 1}));
  const MatrixXc c = k.comultiply(point_mass(k, 1));
  EXPECT_NEAR(std::abs(c(0, 1) - 1.0), 0, 1e-15);
  EXPECT_NEAR(std::abs(c(1, 0) - 1.0), 0, 1e-15);
  EXPECT_NEAR(std::abs(c(0, 0)) + std::abs(c(1, 1)), 0, 1e-15);
  EXPECT_NEAR(std::abs(k.trace(point_mass(k, 1)) - 1.0), 0, 1e-15);
  EXPECT_NEAR(std::abs(k.counit(point_mass(k, 0)) - 1.0), 0, 1e-15);
  EXPECT_LT(dist(k.antipode(point_mass(k, 1)), point_mass(k, 1)), 1e-15);
}

TEST(FunctionAlgebra, ComultiplicationMatchesGroupTable) {
  const auto t = builtin_group("d4");
  const auto k = function_algebra(t);
  for (int g = 0; g < t.order(); ++g) {
    const MatrixXc c = k.comultiply(point_mass(k, g));
    for (int a = 0; a < t.order(); ++a)
      for (int b = 0; b < t.order(); ++b) EXPECT_NEAR(std::abs(c(a, b) - (t.mul(a, b) == g ? 1.0 : 0.0)), 0, 1e-15);
    EXPECT_LT(dist(k.antipode(point_mass(k, g)), point_mass(k, t.inverse(g))), 1e-15);
  }
}

TEST(FunctionAlgebra, AxiomsAndDualShapes) {
  for (int n : {2, 4, 7, 12}) EXPECT_LT(verify_axioms(function_algebra(cyclic_group(n))).max_residual(), 1e-12) << n;
  const auto p = build_dual(function_algebra(builtin_group("s3")));
  EXPECT_EQ(sorted(p.dual().dims()), (Dims{1, 1, 2}));
}

TEST(GroupAlgebra, BlockShapes) {
  EXPECT_EQ(sorted(group_algebra(cyclic_group(2)).dims()), (Dims{1, 1}));
  EXPECT_EQ(sorted(group_algebra(builtin_group("s3")).dims()), (Dims{1, 1, 2}));
  EXPECT_EQ(sorted(group_algebra(builtin_group("q8")).dims()), (Dims{1, 1, 1, 1, 2}));
  EXPECT_EQ(sorted(group_algebra(builtin_group("d4")).dims()), (Dims{1, 1, 1, 1, 2}));
}

TEST(GroupAlgebra, StructureOnGroupElements) {
  for (const auto& t : {builtin_group("s3"), builtin_group("q8"), cyclic_group(5)}) {
    const auto k = group_algebra(t);
    EXPECT_LT(verify_axioms(k).max_residual(), 1e-10) << t.name();
    for (int g = 0; g < t.order(); ++g) {
      const auto lg = point_mass(k, g);
      EXPECT_NEAR(std::abs(k.trace(lg) - (g == t.identity() ? 1.0 : 0.0)), 0, 1e-12);
      EXPECT_LT(dist(k.antipode(lg), point_mass(k, t.inverse(g))), 1e-12);
      const VectorXc c = lg.coefficients();
      EXPECT_LT((k.comultiply(lg) - c * c.transpose()).cwiseAbs().maxCoeff(), 1e-12);
      for (int h = 0; h < t.order(); ++h) EXPECT_LT(dist(lg * point_mass(k, h), point_mass(k, t.mul(g, h))), 1e-12);
    }
  }
}

TEST(StandardElements, Examples) {
  const auto k = function_algebra(cyclic_group(4));
  VectorXc e(4);
  e << 0, 1, 0, 0;
  EXPECT_EQ(dist(point_mass(k, 1), k.element(e)), 0.0);
  std::vector<cplx> chi1;
  for (int g = 0; g < 4; ++g) chi1.push_back(std::pow(cplx(0, 1), g));
  e << 0, cplx(0, 1), 0, cplx(0, -1);
  EXPECT_LT(dist(character_twist(k, chi1, {1, 3}), k.element(e)), 1e-15);
  const auto k3 = function_algebra(cyclic_group(3));
  VectorXc u = VectorXc::Constant(3, 1 / std::sqrt(3.0));
  EXPECT_LT(dist(uniform(k3), k3.element(u)), 1e-15);
  // cosets of {0, 2} through 1
  EXPECT_EQ(dist(coset_indicator(k, {0, 2}, 1, true), indicator(k, {1, 3})), 0.0);
}

TEST(StandardElements, KindMismatch) {
  const auto bare = algebra_from_json(algebra_to_json(function_algebra(cyclic_group(3))));
  EXPECT_EQ(code_of([&] { point_mass(bare, 0); }), ErrorCode::KindMismatch);
  const auto k = function_algebra(cyclic_group(3));
  EXPECT_EQ(code_of([&] { point_mass(k, 5); }), ErrorCode::KindMismatch);
  EXPECT_EQ(code_of([&] { character_twist(k, {1.0, 1.0}, {0}); }), ErrorCode::KindMismatch);
  EXPECT_EQ(code_of([&] { uniform(group_algebra(builtin_group("s3"))); }), ErrorCode::KindMismatch);
}

TEST(GroupTables, InvalidTables) {
  EXPECT_EQ(code_of([] { GroupTable({}, 0); }), ErrorCode::InvalidTable);
  EXPECT_EQ(code_of([] { GroupTable({{0, 1}, {1, 1}}, 0); }), ErrorCode::InvalidTable);
  EXPECT_EQ(code_of([] { GroupTable({{0, 1}, {1, 0}}, 2); }), ErrorCode::InvalidTable);
  EXPECT_EQ(code_of([] { GroupTable({{0, 1, 2}, {1, 2}, {2, 0, 1}}, 0); }), ErrorCode::InvalidTable);
  // a Latin square with identity 0 that is not associative
  EXPECT_EQ(code_of([] {
              GroupTable({{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}}, 0);
            }),
            ErrorCode::InvalidTable);
  EXPECT_EQ(code_of([] { function_algebra(GroupTable({{0, 1}, {1, 1}}, 0)); }), ErrorCode::InvalidTable);
}

TEST(GroupTables, BuiltinsAndSubgroups) {
  EXPECT_EQ(builtin_group("s3").order(), 6);
  EXPECT_FALSE(builtin_group("s3").is_abelian());
  EXPECT_EQ(builtin_group("s3").subgroups().size(), 6u);
  EXPECT_EQ(builtin_group("d4").subgroups().size(), 10u);
  EXPECT_EQ(builtin_group("q8").subgroups().size(), 6u);
  for (int n = 1; n <= 12; ++n)
    EXPECT_EQ(cyclic_group(n).subgroups().size(), static_cast<std::size_t>(oracle::divisor_count(n)));
  EXPECT_THROW(builtin_group("a5"), Error);
  const auto t = builtin_group("q8");
  const auto back = group_table_from_json(group_table_to_json(t));
  EXPECT_EQ(back.table(), t.table());
}

TEST(GroupTables, LinearCharacters) {
  EXPECT_EQ(linear_characters(cyclic_group(6)).size(), 6u);
  EXPECT_EQ(linear_characters(builtin_group("s3")).size(), 2u);
  EXPECT_EQ(linear_characters(builtin_group("q8")).size(), 4u);
  const auto t = builtin_group("d4");
  for (const auto& chi : linear_characters(t))
    for (int a = 0; a < t.order(); ++a)
      for (int b = 0; b < t.order(); ++b) EXPECT_NEAR(std::abs(chi[t.mul(a, b)] - chi[a] * chi[b]), 0, 1e-12);
}

TEST(Isomorphism, DualOfFunctionAlgebraIsGroupAlgebra) {
  std::mt19937_64 rng(21);
  for (const auto& t : {builtin_group("s3"), builtin_group("d4"), builtin_group("q8"), cyclic_group(6)}) {
    const auto p = build_dual(function_algebra(t));
    const auto& d = p.dual();
    const auto c = group_algebra(t);
    ASSERT_EQ(sorted(d.dims()), sorted(c.dims())) << t.name();
    const auto& ld = d.group()->elements;
    std::vector<BlockOperator> lc;
    for (int g = 0; g < t.order(); ++g) lc.push_back(point_mass(c, g));

    // match blocks by character, then find a unitary intertwiner per pair
    std::vector<bool> used(c.dims().size(), false);
    for (std::size_t i = 0; i < d.dims().size(); ++i) {
      int match = -1;
      for (std::size_t j = 0; j < c.dims().size() && match < 0; ++j) {
        if (used[j] || c.dims()[j] != d.dims()[i]) continue;
        double diff = 0;
        for (int g = 0; g < t.order(); ++g) diff += std::abs(ld[g].block(i).trace() - lc[g].block(j).trace());
        if (diff < 1e-8) match = static_cast<int>(j);
      }
      ASSERT_GE(match, 0) << t.name() << " block " << i;
      used[match] = true;
      EXPECT_LT(intertwiner_residual(block_family(ld, i), block_family(lc, match), rng), 1e-8) << t.name();
      // the two traces agree on the matched block
      EXPECT_NEAR(d.trace_weights()[i], c.trace_weights()[match], 1e-9) << t.name();
    }
  }
}

TEST(DirectProducts, FunctionAlgebraOfProductIsTensorProduct) {
  const auto a = cyclic_group(2), b = cyclic_group(3);
  const auto prod = function_algebra(direct_product(a, b));
  const auto tens = tensor_product(function_algebra(a), function_algebra(b));
  EXPECT_EQ(prod.dims().size(), tens.dims().size());
  EXPECT_LT(verify_axioms(tens).max_residual(), 1e-10);
  EXPECT_EQ(build_dual(prod).dual().dims().size(), 6u);
}

TEST(Fixtures, AlgebraFileRoundTrip) {
  for (const auto& k : {function_algebra(builtin_group("s3")), group_algebra(builtin_group("q8"))}) {
    const auto back = algebra_from_json(algebra_to_json(k));
    EXPECT_EQ(back.dims(), k.dims());
    EXPECT_LT(verify_axioms(back).max_residual(), 1e-10);
    std::mt19937_64 rng(1);
    const auto x = BlockOperator::Gaussian(k.dims(), rng);
    EXPECT_LT((back.comultiply(x) - k.comultiply(x)).cwiseAbs().maxCoeff(), 1e-15);
  }
}
