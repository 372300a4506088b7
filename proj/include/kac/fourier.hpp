#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "kac/dual_pair.hpp"

namespace kac {

/// F(x) = lambda(x phi), landing in P.dual().
BlockOperator fourier(const DualPair& p, const BlockOperator& x);
/// The linear inverse of fourier.
BlockOperator inverse_fourier(const DualPair& p, const BlockOperator& xi);

/// x * y = ((x phi) R (x) id)(Delta(y)) inside one algebra.
BlockOperator convolve(const FiniteKacAlgebra& k, const BlockOperator& x, const BlockOperator& y);

enum class Side { Primal, Dual };
/// Convolution in the primal or the dual algebra of p.
BlockOperator convolve(const DualPair& p, const BlockOperator& x, const BlockOperator& y, Side side = Side::Primal);

/// H(|x|^2) = -phi(x^* x log x^* x).
double entropy(const FiniteKacAlgebra& k, const BlockOperator& x, const ToleranceConfig& tol = {});
/// S(x) = phi(range projection of x).
double support_measure(const FiniteKacAlgebra& k, const BlockOperator& x, const ToleranceConfig& tol = {});

struct UPReport {
  double l1 = 0, l2 = 0, linf = 0;
  double dual_l1 = 0, dual_l2 = 0, dual_linf = 0;
  double entropy = 0, dual_entropy = 0;
  double hb_deficit = 0;
  double support = 0, dual_support = 0;
  double ds_product = 0;
  bool minimal = false;  // either uncertainty inequality attained
};

UPReport up_report(const DualPair& p, const BlockOperator& x, const ToleranceConfig& tol = {});
nlohmann::json to_json(const UPReport& r);

struct InequalityRow {
  int sample_id = 0;
  std::string inequality_name;
  double lhs = 0;
  double rhs = 0;
  double violation = 0;  // max(0, lhs - rhs) / max(1, |rhs|); |lhs - rhs| / max(1, |rhs|) for equalities
};

struct InequalityReport {
  std::vector<InequalityRow> rows;
  double max_violation = 0;
  double min_hb_deficit = 0;
  double min_ds_product = 0;

  bool passed(const ToleranceConfig& tol = {}) const;
};

/// Random complex Gaussian samples checked against Hausdorff-Young (p = 1, 4/3, 2),
/// Young for (p, q, r) in {(1,1,1), (1,2,2), (2,2,inf)}, Plancherel and both
/// uncertainty principles. Sample i is drawn from its own generator seeded by
/// (seed, i), so reports are reproducible and independent of evaluation order.
InequalityReport inequality_suite(const DualPair& p, int samples, std::uint64_t seed = 1,
                                  const ToleranceConfig& tol = {});

/// Writes rows as CSV with header sample_id,inequality_name,lhs,rhs,violation.
std::string inequality_csv(const std::vector<InequalityRow>& rows);

/// Deterministic per-sample generator.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace kac
