#pragma once

#include <Eigen/Sparse>

#include <cstdint>
#include <memory>

#include "kac/kac_algebra.hpp"
#include "kac/tolerance.hpp"

namespace kac {

using SparseMatrixXc = Eigen::SparseMatrix<cplx>;

/// A Kac algebra together with its dual, the multiplicative unitary and the
/// Fourier transform between them.
///
/// The GNS space H of the primal algebra carries the orthonormal basis
/// f_k = e_k / sqrt(t_k); W acts on H (x) H with f_a (x) f_b at index a * N + b.
/// The dual algebra is span{F(x)} inside B(H), brought to block form, and the
/// Fourier transform is stored as the N x N matrix taking primal coefficients
/// to dual coefficients.
class DualPair {
 public:
  const FiniteKacAlgebra& primal() const { return primal_; }
  const FiniteKacAlgebra& dual() const { return dual_; }
  const SparseMatrixXc& W() const { return w_; }
  const MatrixXc& fourier_matrix() const { return phi_; }
  const MatrixXc& inverse_fourier_matrix() const { return phi_inv_; }
  /// Isometries H -> irreducible summand, one per dual block.
  const std::vector<MatrixXc>& embeddings() const { return embeddings_; }

  /// F(x) as an operator on H in the f basis.
  MatrixXc fourier_operator(const BlockOperator& x) const;

  /// omega -> (omega (x) id)(W), taking a functional on the primal algebra
  /// (as a coefficient row) to a dual element.
  BlockOperator lambda_map(const RowVectorXc& omega) const;

  /// The pair (dual, bidual), used for checks on the dual side.
  bool has_reverse() const { return static_cast<bool>(reverse_); }
  const DualPair& reverse() const;

 private:
  friend struct DualPairBuilder;
  FiniteKacAlgebra primal_;
  FiniteKacAlgebra dual_;
  SparseMatrixXc w_;
  MatrixXc phi_;
  MatrixXc phi_inv_;
  std::vector<MatrixXc> embeddings_;
  std::shared_ptr<const DualPair> reverse_;
};

struct DualOptions {
  bool with_reverse = true;
  bool check_axioms = true;
  std::uint64_t seed = 0x5eedULL;
  ToleranceConfig tol = {};
};

/// Builds the dual. Throws AxiomFailure when verify_axioms fails on k and
/// BlockDecompositionFailure when the dual cannot be split.
DualPair build_dual(const FiniteKacAlgebra& k, const DualOptions& options = {});

struct UnitaryReport {
  double unitarity = 0;                  // |W^* W - 1|
  double implements_comultiplication = 0;  // |W^*(1 (x) x)W - Delta(x)| over basis x
  double plancherel = 0;                 // |F^* (dual Gram) F - (primal Gram)|

  bool passed(double tol) const { return unitarity < tol && implements_comultiplication < tol && plancherel < tol; }
};

UnitaryReport verify_multiplicative_unitary(const DualPair& p);

/// Left multiplication by x on H in the f basis.
SparseMatrixXc left_regular(const FiniteKacAlgebra& k, const BlockOperator& x);

}  // namespace kac
