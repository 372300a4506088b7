#pragma once

#include <complex>
#include <string>
#include <vector>

#include "kac/kac_algebra.hpp"

namespace kac {

/// F(G): one 1x1 block per element, counting measure, Delta(d_g) = sum_{ab=g} d_a (x) d_b.
FiniteKacAlgebra function_algebra(const GroupTable& t);

/// C[G] in block form via the decomposition of the left regular
/// representation; tau(lambda_e) = 1, Delta(lambda_g) = lambda_g (x) lambda_g.
FiniteKacAlgebra group_algebra(const GroupTable& t);

/// Shipped group tables: "s3", "d4", "q8".
GroupTable builtin_group(const std::string& name);

/// Standard elements of an algebra carrying a group realization.
///
/// Function-algebra kinds (point masses) act on group elements g; on a group
/// algebra point_mass returns lambda_g and the subset kinds return sums of
/// lambda_g. Throws KindMismatch when the algebra has no group attached.
BlockOperator point_mass(const FiniteKacAlgebra& k, int g);
BlockOperator indicator(const FiniteKacAlgebra& k, const std::vector<int>& subset);
BlockOperator coset_indicator(const FiniteKacAlgebra& k, const std::vector<int>& subgroup, int g, bool left);
BlockOperator character_twist(const FiniteKacAlgebra& k, const std::vector<std::complex<double>>& chi,
                              const std::vector<int>& subset);
/// Unit vector (1,...,1)/sqrt(n) of a function algebra.
BlockOperator uniform(const FiniteKacAlgebra& k);

}  // namespace kac
