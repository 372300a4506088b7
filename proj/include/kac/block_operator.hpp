#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "kac/error.hpp"

namespace kac {

using Index = Eigen::Index;
using Dims = std::vector<Index>;
using cplx = std::complex<double>;

/// Total number of matrix-unit coefficients for the given block sizes.
inline Index basis_size(const Dims& dims) {
  Index n = 0;
  for (Index d : dims) n += d * d;
  return n;
}

/// Offsets of each block inside the flattened coefficient vector.
inline std::vector<Index> block_offsets(const Dims& dims) {
  std::vector<Index> off(dims.size() + 1, 0);
  for (std::size_t i = 0; i < dims.size(); ++i) off[i + 1] = off[i] + dims[i] * dims[i];
  return off;
}

/// Position of a matrix unit e^{(block)}_{row,col} in the flattened basis.
struct MatrixUnit {
  std::size_t block;
  Index row;
  Index col;
};

inline std::vector<MatrixUnit> matrix_units(const Dims& dims) {
  std::vector<MatrixUnit> units;
  units.reserve(static_cast<std::size_t>(basis_size(dims)));
  for (std::size_t b = 0; b < dims.size(); ++b)
    for (Index r = 0; r < dims[b]; ++r)
      for (Index c = 0; c < dims[b]; ++c) units.push_back({b, r, c});
  return units;
}

/// Element of a finite-dimensional *-algebra: a direct sum of square matrices.
///
/// Coefficients are flattened block by block, row-major inside each block; that
/// ordering is the matrix-unit basis used throughout the library.
template <typename Scalar_>
class BlockMatrix {
 public:
  using Scalar = Scalar_;
  using RealScalar = typename Eigen::NumTraits<Scalar>::Real;
  using MatrixType = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using VectorType = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  BlockMatrix() = default;

  explicit BlockMatrix(std::vector<MatrixType> blocks) : blocks_(std::move(blocks)) {
    dims_.reserve(blocks_.size());
    for (const auto& b : blocks_) {
      if (b.rows() != b.cols() || b.rows() == 0)
        throw Error(ErrorCode::InvalidShape, "blocks must be non-empty and square");
      dims_.push_back(b.rows());
    }
  }

  static BlockMatrix Zero(const Dims& dims) {
    std::vector<MatrixType> blocks;
    for (Index d : dims) blocks.push_back(MatrixType::Zero(d, d));
    return BlockMatrix(std::move(blocks));
  }

  static BlockMatrix Identity(const Dims& dims) {
    std::vector<MatrixType> blocks;
    for (Index d : dims) blocks.push_back(MatrixType::Identity(d, d));
    return BlockMatrix(std::move(blocks));
  }

  static BlockMatrix Unit(const Dims& dims, Index flat_index) {
    VectorType v = VectorType::Zero(basis_size(dims));
    v(flat_index) = Scalar(1);
    return FromCoefficients(dims, v);
  }

  template <typename Derived>
  static BlockMatrix FromCoefficients(const Dims& dims, const Eigen::MatrixBase<Derived>& coeffs) {
    if (coeffs.size() != basis_size(dims))
      throw Error(ErrorCode::InvalidShape, "coefficient vector does not match block dims");
    std::vector<MatrixType> blocks;
    Index k = 0;
    for (Index d : dims) {
      MatrixType b(d, d);
      for (Index r = 0; r < d; ++r)
        for (Index c = 0; c < d; ++c) b(r, c) = coeffs(k++);
      blocks.push_back(std::move(b));
    }
    return BlockMatrix(std::move(blocks));
  }

  /// Entries drawn i.i.d. standard normal (complex: real and imaginary parts).
  template <typename Rng>
  static BlockMatrix Gaussian(const Dims& dims, Rng& rng) {
    std::normal_distribution<RealScalar> normal(0, 1);
    VectorType v(basis_size(dims));
    for (Index i = 0; i < v.size(); ++i) {
      if constexpr (Eigen::NumTraits<Scalar>::IsComplex)
        v(i) = Scalar(normal(rng), normal(rng));
      else
        v(i) = normal(rng);
    }
    return FromCoefficients(dims, v);
  }

  const Dims& dims() const { return dims_; }
  std::size_t block_count() const { return blocks_.size(); }
  const MatrixType& block(std::size_t i) const { return blocks_[i]; }
  const std::vector<MatrixType>& blocks() const { return blocks_; }
  Index size() const { return basis_size(dims_); }

  VectorType coefficients() const {
    VectorType v(size());
    Index k = 0;
    for (const auto& b : blocks_)
      for (Index r = 0; r < b.rows(); ++r)
        for (Index c = 0; c < b.cols(); ++c) v(k++) = b(r, c);
    return v;
  }

  BlockMatrix adjoint() const { return map([](const MatrixType& b) -> MatrixType { return b.adjoint(); }); }

  template <typename F>
  BlockMatrix map(F&& f) const {
    std::vector<MatrixType> out;
    out.reserve(blocks_.size());
    for (const auto& b : blocks_) out.push_back(f(b));
    return BlockMatrix(std::move(out));
  }

  bool same_shape(const BlockMatrix& other) const { return dims_ == other.dims_; }

  friend BlockMatrix operator+(const BlockMatrix& a, const BlockMatrix& b) {
    return zip(a, b, [](const MatrixType& x, const MatrixType& y) -> MatrixType { return x + y; });
  }
  friend BlockMatrix operator-(const BlockMatrix& a, const BlockMatrix& b) {
    return zip(a, b, [](const MatrixType& x, const MatrixType& y) -> MatrixType { return x - y; });
  }
  friend BlockMatrix operator*(const BlockMatrix& a, const BlockMatrix& b) {
    return zip(a, b, [](const MatrixType& x, const MatrixType& y) -> MatrixType { return x * y; });
  }
  friend BlockMatrix operator-(const BlockMatrix& a) {
    return a.map([](const MatrixType& x) -> MatrixType { return -x; });
  }
  friend BlockMatrix operator*(const Scalar& s, const BlockMatrix& a) {
    return a.map([&](const MatrixType& x) -> MatrixType { return s * x; });
  }
  friend BlockMatrix operator*(const BlockMatrix& a, const Scalar& s) { return s * a; }
  friend BlockMatrix operator/(const BlockMatrix& a, const Scalar& s) {
    return a.map([&](const MatrixType& x) -> MatrixType { return x / s; });
  }

 private:
  template <typename F>
  static BlockMatrix zip(const BlockMatrix& a, const BlockMatrix& b, F&& f) {
    if (!a.same_shape(b)) throw Error(ErrorCode::AlgebraMismatch, "block dimensions differ");
    std::vector<MatrixType> out;
    out.reserve(a.blocks_.size());
    for (std::size_t i = 0; i < a.blocks_.size(); ++i) out.push_back(f(a.blocks_[i], b.blocks_[i]));
    return BlockMatrix(std::move(out));
  }

  std::vector<MatrixType> blocks_;
  Dims dims_;
};

using BlockOperator = BlockMatrix<cplx>;

/// Largest absolute coefficient; the residual metric used by the axiom checks.
template <typename Scalar>
typename BlockMatrix<Scalar>::RealScalar max_abs(const BlockMatrix<Scalar>& x) {
  typename BlockMatrix<Scalar>::RealScalar m(0);
  for (const auto& b : x.blocks())
    if (b.size() > 0) m = std::max(m, b.cwiseAbs().maxCoeff());
  return m;
}

/// Operator norm: the largest singular value over all blocks.
template <typename Scalar>
typename BlockMatrix<Scalar>::RealScalar operator_norm(const BlockMatrix<Scalar>& x) {
  typename BlockMatrix<Scalar>::RealScalar m(0);
  for (const auto& b : x.blocks()) {
    Eigen::JacobiSVD<typename BlockMatrix<Scalar>::MatrixType> svd(b);
    m = std::max(m, svd.singularValues()(0));
  }
  return m;
}

/// Unweighted trace sum over all blocks.
template <typename Scalar>
Scalar plain_trace(const BlockMatrix<Scalar>& x) {
  Scalar s(0);
  for (const auto& b : x.blocks()) s += b.trace();
  return s;
}

/// Kronecker product x (x) y arranged as the tensor-square block algebra: block
/// (i, j) is x_i (x) y_j and blocks are ordered i-major.
template <typename Scalar>
BlockMatrix<Scalar> tensor(const BlockMatrix<Scalar>& x, const BlockMatrix<Scalar>& y) {
  using M = typename BlockMatrix<Scalar>::MatrixType;
  std::vector<M> out;
  out.reserve(x.block_count() * y.block_count());
  for (const auto& a : x.blocks())
    for (const auto& b : y.blocks()) {
      M k(a.rows() * b.rows(), a.cols() * b.cols());
      for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
      out.push_back(std::move(k));
    }
  return BlockMatrix<Scalar>(std::move(out));
}

inline Dims tensor_dims(const Dims& a, const Dims& b) {
  Dims out;
  out.reserve(a.size() * b.size());
  for (Index x : a)
    for (Index y : b) out.push_back(x * y);
  return out;
}

}  // namespace kac
