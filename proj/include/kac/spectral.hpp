#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <optional>

#include "kac/block_operator.hpp"
#include "kac/tolerance.hpp"

namespace kac {

// Blockwise spectral calculus. Every function here works block by block and
// preserves the block structure of its argument.

template <typename Scalar>
struct PolarDecomposition {
  BlockMatrix<Scalar> partial_isometry;  // w
  BlockMatrix<Scalar> modulus;           // |x| = (x^* x)^{1/2}
};

/// Hermitian eigendecomposition of (m + m^*) / 2.
template <typename MatrixType>
Eigen::SelfAdjointEigenSolver<MatrixType> hermitian_eigen(const MatrixType& m) {
  MatrixType h = (m + m.adjoint()) / 2;
  return Eigen::SelfAdjointEigenSolver<MatrixType>(h);
}

/// Largest singular value across all blocks.
template <typename Scalar>
typename BlockMatrix<Scalar>::RealScalar sigma_max(const BlockMatrix<Scalar>& x) {
  return operator_norm(x);
}

/// x = w |x| with w^* w the range projection of |x|.
template <typename Scalar>
PolarDecomposition<Scalar> polar_decompose(const BlockMatrix<Scalar>& x, const ToleranceConfig& tol = {}) {
  using M = typename BlockMatrix<Scalar>::MatrixType;
  const auto cut = tol.rank_tol * sigma_max(x);
  std::vector<M> ws, ms;
  for (const auto& b : x.blocks()) {
    Eigen::JacobiSVD<M> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    Index r = 0;
    while (r < s.size() && s(r) > cut) ++r;
    const M& u = svd.matrixU();
    const M& v = svd.matrixV();
    ws.push_back(u.leftCols(r) * v.leftCols(r).adjoint());
    ms.push_back(v.leftCols(r) * s.head(r).template cast<Scalar>().asDiagonal() * v.leftCols(r).adjoint());
  }
  return {BlockMatrix<Scalar>(std::move(ws)), BlockMatrix<Scalar>(std::move(ms))};
}

/// Orthogonal projection onto the column space of x.
template <typename Scalar>
BlockMatrix<Scalar> range_projection(const BlockMatrix<Scalar>& x, const ToleranceConfig& tol = {}) {
  using M = typename BlockMatrix<Scalar>::MatrixType;
  const auto cut = tol.rank_tol * sigma_max(x);
  std::vector<M> out;
  for (const auto& b : x.blocks()) {
    Eigen::JacobiSVD<M> svd(b, Eigen::ComputeFullU);
    const auto& s = svd.singularValues();
    Index r = 0;
    while (r < s.size() && s(r) > cut) ++r;
    out.push_back(svd.matrixU().leftCols(r) * svd.matrixU().leftCols(r).adjoint());
  }
  return BlockMatrix<Scalar>(std::move(out));
}

/// Per-block ranks under the same cut as range_projection.
template <typename Scalar>
std::vector<Index> block_ranks(const BlockMatrix<Scalar>& x, const ToleranceConfig& tol = {}) {
  using M = typename BlockMatrix<Scalar>::MatrixType;
  const auto cut = tol.rank_tol * sigma_max(x);
  std::vector<Index> ranks;
  for (const auto& b : x.blocks()) {
    Eigen::JacobiSVD<M> svd(b);
    const auto& s = svd.singularValues();
    Index r = 0;
    while (r < s.size() && s(r) > cut) ++r;
    ranks.push_back(r);
  }
  return ranks;
}

struct PositiveFunction {
  enum class Kind { Power, XLogX, Log };
  Kind kind = Kind::Power;
  double alpha = 1.0;

  static PositiveFunction power(double a) {
    if (!(a > 0)) throw Error(ErrorCode::BadExponent, "power exponent must be positive");
    return {Kind::Power, a};
  }
  static PositiveFunction xlogx() { return {Kind::XLogX, 0.0}; }
  static PositiveFunction log() { return {Kind::Log, 0.0}; }
};

/// Applies f to the spectrum of a positive semidefinite x.
///
/// Eigenvalues in [-eq_tol*|x|, 0) are clamped to 0. For xlogx, eigenvalues
/// below entropy_floor contribute 0; for log, they are rejected.
template <typename Scalar>
BlockMatrix<Scalar> positive_function(const BlockMatrix<Scalar>& x, PositiveFunction f,
                                      const ToleranceConfig& tol = {}) {
  using M = typename BlockMatrix<Scalar>::MatrixType;
  using Real = typename BlockMatrix<Scalar>::RealScalar;
  const Real norm = sigma_max(x);
  std::vector<M> out;
  for (const auto& b : x.blocks()) {
    auto es = hermitian_eigen(b);
    Eigen::Matrix<Real, Eigen::Dynamic, 1> ev = es.eigenvalues();
    if (ev.size() > 0 && ev.minCoeff() < -tol.eq_tol * norm)
      throw Error(ErrorCode::NotPositive, "operator has a negative eigenvalue");
    for (Index i = 0; i < ev.size(); ++i) {
      Real l = std::max(ev(i), Real(0));
      switch (f.kind) {
        case PositiveFunction::Kind::Power:
          ev(i) = l > 0 ? std::pow(l, Real(f.alpha)) : Real(0);
          break;
        case PositiveFunction::Kind::XLogX:
          ev(i) = l < tol.entropy_floor ? Real(0) : l * std::log(l);
          break;
        case PositiveFunction::Kind::Log:
          if (l < tol.entropy_floor) throw Error(ErrorCode::NotPositive, "log of a singular operator");
          ev(i) = std::log(l);
          break;
      }
    }
    const M& v = es.eigenvectors();
    out.push_back(v * ev.template cast<Scalar>().asDiagonal() * v.adjoint());
  }
  return BlockMatrix<Scalar>(std::move(out));
}

/// |x| = (x^* x)^{1/2}.
template <typename Scalar>
BlockMatrix<Scalar> modulus(const BlockMatrix<Scalar>& x, const ToleranceConfig& tol = {}) {
  return polar_decompose(x, tol).modulus;
}

/// Returns the common nonzero singular value mu when x / mu is a partial
/// isometry, and nullopt otherwise.
template <typename Scalar>
std::optional<typename BlockMatrix<Scalar>::RealScalar> is_partial_isometry(const BlockMatrix<Scalar>& x,
                                                                            const ToleranceConfig& tol = {}) {
  using M = typename BlockMatrix<Scalar>::MatrixType;
  using Real = typename BlockMatrix<Scalar>::RealScalar;
  const Real top = sigma_max(x);
  if (!(top > 0)) throw Error(ErrorCode::ZeroOperator, "partial isometry test of the zero operator");
  const Real cut = tol.rank_tol * top;
  Real low = top;
  for (const auto& b : x.blocks()) {
    Eigen::JacobiSVD<M> svd(b);
    for (Index i = 0; i < svd.singularValues().size(); ++i) {
      Real s = svd.singularValues()(i);
      if (s > cut) low = std::min(low, s);
    }
  }
  if (top - low > tol.eq_tol * top) return std::nullopt;
  return top;
}

/// x == x^* and x^2 == x, relative to max(1, |x|).
template <typename Scalar>
bool is_projection(const BlockMatrix<Scalar>& x, const ToleranceConfig& tol = {}) {
  const auto scale = std::max<typename BlockMatrix<Scalar>::RealScalar>(1, max_abs(x));
  return max_abs(BlockMatrix<Scalar>(x - x.adjoint())) <= tol.eq_tol * scale &&
         max_abs(BlockMatrix<Scalar>(x * x - x)) <= tol.eq_tol * scale;
}

/// Smallest eigenvalue of the Hermitian part over all blocks.
template <typename Scalar>
typename BlockMatrix<Scalar>::RealScalar min_eigenvalue(const BlockMatrix<Scalar>& x) {
  using Real = typename BlockMatrix<Scalar>::RealScalar;
  Real m = std::numeric_limits<Real>::infinity();
  for (const auto& b : x.blocks()) m = std::min(m, hermitian_eigen(b).eigenvalues().minCoeff());
  return m;
}

/// p <= q for projections: q p == p.
template <typename Scalar>
bool projection_dominated(const BlockMatrix<Scalar>& p, const BlockMatrix<Scalar>& q,
                          const ToleranceConfig& tol = {}) {
  return max_abs(BlockMatrix<Scalar>(q * p - p)) <= tol.eq_tol * std::max<double>(1, max_abs(p));
}

/// Scalar mu with x == mu * q for a projection q, if one exists.
template <typename Scalar>
std::optional<Scalar> projection_multiple(const BlockMatrix<Scalar>& x, const ToleranceConfig& tol = {}) {
  const auto top = sigma_max(x);
  if (!(top > 0)) return std::nullopt;
  const auto q = range_projection(x, tol);
  const Scalar mu = plain_trace(BlockMatrix<Scalar>(q * x)) / plain_trace(q);
  if (max_abs(BlockMatrix<Scalar>(x - mu * q)) > tol.eq_tol * top) return std::nullopt;
  return mu;
}

}  // namespace kac
