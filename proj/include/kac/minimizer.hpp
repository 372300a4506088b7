#pragma once

#include <complex>

#include <json.hpp>

#include "kac/biprojection.hpp"

namespace kac {

/// ||F(x)||_inf == ||x||_1 relative to ||x||_1. Throws ZeroOperator.
bool is_extremal(const DualPair& p, const BlockOperator& x, const ToleranceConfig& tol = {});

/// x and F(x) are scalar multiples of partial isometries and x is extremal.
bool is_extremal_bpi(const DualPair& p, const BlockOperator& x, const ToleranceConfig& tol = {});

struct MinimizerVerdict {
  bool entropy_equality = false;
  bool ds_equality = false;
  bool extremal_bpi = false;
  bool bishift = false;
  bool consistent = false;
  double hb_deficit = 0;  // of x / ||x||_2
  double ds_product = 0;
};

nlohmann::json to_json(const MinimizerVerdict& v);

/// Evaluates the four equivalent minimizer conditions on x / ||x||_2 and
/// flags whether they agree. Throws ZeroOperator.
MinimizerVerdict check_main_theorem(const DualPair& p, const BlockOperator& x, const ToleranceConfig& tol = {});

struct SqReport {
  double identity_residual = 0;        // relative, on the partial-isometry normalization of w
  double partial_isometry_defect = 0;  // |mu - 1| for w * R(w)^* / ||w||_2^2, inf if not a partial isometry
  double l1_residual = 0;              // ||w||_1 vs ||w * R(w)^*||_1 / ||w||_2^2
  bool passed(const ToleranceConfig& tol = {}) const;
};

nlohmann::json to_json(const SqReport& r);

/// Convolution square identity for an extremal bi-partial isometry w, after
/// rescaling w to a partial isometry. Throws NotExtremalBPI.
SqReport verify_sq(const DualPair& p, const BlockOperator& w, const ToleranceConfig& tol = {});

struct QExtraction {
  BlockOperator Q;
  int steps = 0;  // squarings performed
};

/// Limit of A^(2^s) with A = T^* T, T = w * R(w^*), after normalizing
/// ||w||_2 = 1. At most ceil(log2(max_iter)) squarings are attempted.
/// Throws PreconditionFailed if ||T||_inf != 1, NoConvergence if the iterate
/// does not settle to a projection, TheoremViolation if the limit is not an
/// extremal bi-partial isometry.
QExtraction extract_q(const DualPair& p, const BlockOperator& w, double max_iter = 1e6, double conv_tol = 1e-12,
                      const ToleranceConfig& tol = {});

/// Writes an extremal bi-partial isometry w (rescaled to a partial isometry)
/// as F^{-1}(B_h_tilde) * (B_g w) with B_g = w w^* and
/// B_h_tilde = F(w) F(w)^* / ||w||_2^4. The returned certificate has y = x = w.
/// Throws NotExtremalBPI or ReconstructionFailure.
BiShiftCert bishift_decompose(const DualPair& p, const BlockOperator& w, const ToleranceConfig& tol = {});

struct HardyResult {
  std::complex<double> mu;
  double residual = 0;  // ||x - mu w||_2 / ||x||_2
};

/// For |x| <= c|w| and |F(x)| <= c_prime|F(w)| (operator order), returns the
/// scalar mu = phi(w^* x) / ||w||_2^2 with x == mu w. Throws PreconditionFailed
/// if w is not a bi-shift, HypothesisFailed if a domination fails and
/// TheoremViolation if no scalar fits.
HardyResult hardy_check(const DualPair& p, const BlockOperator& w, const BlockOperator& x, double c, double c_prime,
                        const ToleranceConfig& tol = {});

/// dim { x : (1 - B_g) x = 0 and (1 - B_h_tilde) F(x) = 0 }.
Index uniqueness_dimension(const DualPair& p, const BlockOperator& b_g, const BlockOperator& b_h_tilde,
                           const ToleranceConfig& tol = {});

}  // namespace kac
