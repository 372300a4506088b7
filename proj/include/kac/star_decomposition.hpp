#pragma once

#include <cstdint>
#include <vector>

#include "kac/kac_algebra.hpp"

namespace kac {

/// Block decomposition of a matrix *-algebra A acting on C^D.
///
/// A is given by a spanning set of D x D matrices and must contain the identity
/// and be closed under products and adjoints. The isometries V_i (D x d_i) pick
/// one irreducible subspace from every isomorphism class, so that
/// a -> (V_1^* a V_1, ..., V_m^* a V_m) is a *-isomorphism onto the direct sum
/// of full matrix algebras M_{d_i}.
struct StarDecomposition {
  Dims dims;
  std::vector<MatrixXc> isometries;

  BlockOperator compress(const MatrixXc& a) const;
};

/// Numerical decomposition: the commutant is computed as a null space, a
/// random self-adjoint commutant element is diagonalized, its eigenspaces are
/// checked for irreducibility and grouped by equivalence. Throws
/// BlockDecompositionFailure when no attempt yields a consistent splitting.
StarDecomposition decompose_star_algebra(const std::vector<MatrixXc>& span, std::uint64_t seed = 0x5eedULL);

}  // namespace kac
