#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kac/dual_pair.hpp"

namespace kac {

enum class ShiftSide { Left, Right };

/// p is a nonzero projection and F(p) is a multiple of a projection.
bool is_biprojection(const DualPair& p, const BlockOperator& b, const ToleranceConfig& tol = {});

/// Delta(B)(B (x) 1) = Delta(B)(1 (x) B) = B (x) B. Throws NotProjection.
bool is_group_like(const FiniteKacAlgebra& k, const BlockOperator& b, const ToleranceConfig& tol = {});

/// phi(x) = phi(B) and x * B = phi(B) x (left) or B * x = phi(B) x (right).
/// Throws NotBiprojection for B and NotProjection for x.
bool is_shift(const DualPair& p, const BlockOperator& x, const BlockOperator& b, ShiftSide side,
              const ToleranceConfig& tol = {});

struct BiShiftCert {
  BlockOperator B;          // biprojection in the primal algebra
  BlockOperator B_tilde;    // range projection of F(B), in the dual
  BlockOperator B_g;        // right shift of B
  BlockOperator B_h_tilde;  // right shift of B_tilde
  BlockOperator y;          // witness
  BlockOperator x;          // F^{-1}(B_h_tilde) * (B_g y)
  std::string description;
};

nlohmann::json to_json(const BiShiftCert& c);

/// Builds x = F^{-1}(B_h_tilde) * (B_g y) and verifies its supports and the
/// Donoho-Stark equality. B is recomputed as B_g * R(B_g) / phi(B_g) and, when
/// given, cross-checked. Needs p.has_reverse() for the dual-side shift check.
/// Throws ZeroResult if x vanishes and ShiftMismatch if any check fails.
BiShiftCert make_bi_shift(const DualPair& p, const BlockOperator& b_g, const BlockOperator& b_h_tilde,
                          const BlockOperator& y, const std::optional<BlockOperator>& b = std::nullopt,
                          const ToleranceConfig& tol = {});

struct LabeledProjection {
  BlockOperator projection;
  std::string label;
};

/// Certified biprojections: subgroup candidates when a group realization is
/// attached, otherwise central projections (up to 16 blocks); `extra`
/// candidates are always tested. Throws DimensionCap above `cap`.
std::vector<LabeledProjection> enumerate_biprojections(const DualPair& p,
                                                       const std::vector<BlockOperator>& extra = {},
                                                       Index cap = 64, const ToleranceConfig& tol = {});

/// Certified shifts of B on one side: cosets (point masses), twisted subgroup
/// projections and their conjugates (group unitaries), or central projections.
std::vector<LabeledProjection> enumerate_shifts(const DualPair& p, const BlockOperator& b, ShiftSide side,
                                                const std::vector<BlockOperator>& extra = {},
                                                const ToleranceConfig& tol = {});

/// Every bi-shift family: for each biprojection B, every right shift B_g of B
/// paired with every right shift of B_tilde in the dual. The witness y is a
/// Gaussian element drawn from `seed`; each x is rescaled to a partial
/// isometry with its first significant coefficient real and positive.
std::vector<BiShiftCert> enumerate_bi_shifts(const DualPair& p, std::uint64_t seed = 7, Index cap = 64,
                                             const ToleranceConfig& tol = {});

}  // namespace kac
