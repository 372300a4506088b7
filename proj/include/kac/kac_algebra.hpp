#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "kac/block_operator.hpp"
#include "kac/group_table.hpp"
#include "kac/tolerance.hpp"

namespace kac {

using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;
using RowVectorXc = Eigen::RowVectorXcd;

/// How a group sits inside an algebra: either as point masses delta_g
/// (function algebra) or as group-like unitaries lambda_g (group algebra).
enum class RealizationKind { PointMasses, GroupUnitaries };

struct GroupRealization {
  GroupTable table;
  RealizationKind kind = RealizationKind::PointMasses;
  std::vector<BlockOperator> elements;  // indexed by group element
};

/// Finite-dimensional unimodular Kac algebra in the matrix-unit basis.
///
/// Elements are BlockOperators over dims(). The comultiplication is stored as
/// a dense basis_size()^2 x basis_size() matrix whose column k holds Delta(e_k)
/// expanded over the pair basis e_a (x) e_b, flattened as a * N + b. The
/// antipode is an N x N matrix acting on coefficient vectors and the counit a
/// row vector.
class FiniteKacAlgebra {
 public:
  FiniteKacAlgebra() = default;
  FiniteKacAlgebra(Dims dims, std::vector<double> trace_weights, MatrixXc comul, MatrixXc antipode,
                   RowVectorXc counit, std::string name = {}, std::optional<GroupRealization> group = {});

  const Dims& dims() const { return dims_; }
  Index basis_size() const { return n_; }
  const std::vector<double>& trace_weights() const { return weights_; }
  const MatrixXc& comul_matrix() const { return comul_; }
  const MatrixXc& antipode_matrix() const { return antipode_; }
  const RowVectorXc& counit_row() const { return counit_; }
  const std::string& name() const { return name_; }
  const std::optional<GroupRealization>& group() const { return group_; }

  /// Block index and Haar weight for each flattened basis position.
  std::size_t block_of(Index k) const { return block_of_[static_cast<std::size_t>(k)]; }
  double weight_of(Index k) const { return weights_[block_of(k)]; }

  BlockOperator unit() const { return BlockOperator::Identity(dims_); }
  BlockOperator basis_element(Index k) const { return BlockOperator::Unit(dims_, k); }
  BlockOperator element(const VectorXc& coeffs) const { return BlockOperator::FromCoefficients(dims_, coeffs); }

  /// Haar trace phi(x) = sum_i t_i Tr(x_i).
  cplx trace(const BlockOperator& x) const;
  /// Row vector of the functional y -> phi(y x).
  RowVectorXc trace_functional(const BlockOperator& x) const;
  /// The element x with phi(. x) equal to the given functional.
  BlockOperator density_of(const RowVectorXc& functional) const;

  BlockOperator antipode(const BlockOperator& x) const;
  cplx counit(const BlockOperator& x) const;

  /// Delta(x) as an N x N coefficient matrix over e_a (x) e_b (row a, column b).
  MatrixXc comultiply(const BlockOperator& x) const;

  /// Tensor-square block layout and conversions for M (x) M.
  Dims tensor_square_dims() const { return tensor_dims(dims_, dims_); }
  BlockOperator tensor_from_pairs(const MatrixXc& pair_coeffs) const;
  MatrixXc pairs_from_tensor(const BlockOperator& t) const;

  /// Product e_a e_b of matrix units: the flattened index, or -1 for zero.
  Index unit_product(Index a, Index b) const;

  void check_element(const BlockOperator& x) const;

 private:
  Dims dims_;
  Index n_ = 0;
  std::vector<double> weights_;
  MatrixXc comul_;
  MatrixXc antipode_;
  RowVectorXc counit_;
  std::string name_;
  std::optional<GroupRealization> group_;
  std::vector<std::size_t> block_of_;
  std::vector<MatrixUnit> units_;
  std::vector<Index> offsets_;
  std::vector<Index> pair_to_tensor_;  // a * N + b -> flat index in the tensor BlockOperator
};

/// (omega (x) id)(X) and (id (x) omega)(X) for an N x N pair-coefficient matrix.
VectorXc slice_left(const RowVectorXc& omega, const MatrixXc& pairs);
VectorXc slice_right(const MatrixXc& pairs, const RowVectorXc& omega);

struct AxiomResidual {
  std::string name;
  double residual = 0;
};

struct AxiomReport {
  std::vector<AxiomResidual> residuals;
  double tolerance = 0;

  bool passed() const;
  double max_residual() const;
  double residual(const std::string& name) const;
};

/// Residuals of every Kac algebra axiom, evaluated on the matrix-unit basis.
AxiomReport verify_axioms(const FiniteKacAlgebra& k, const ToleranceConfig& tol = {});

/// phi(|x|^p)^{1/p}; p = infinity gives the operator norm.
double gns_norm(const FiniteKacAlgebra& k, const BlockOperator& x, double p, const ToleranceConfig& tol = {});

/// Tensor product of two Kac algebras with blocks ordered (i, j) -> i * B2 + j.
FiniteKacAlgebra tensor_product(const FiniteKacAlgebra& a, const FiniteKacAlgebra& b);

}  // namespace kac
