#include "kac/minimizer.hpp"

#include <cmath>
#include <limits>

#include "kac/fourier.hpp"
#include "kac/spectral.hpp"

namespace kac {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double rel_diff(const BlockOperator& a, const BlockOperator& b) {
  return max_abs(BlockOperator(a - b)) / std::max({1.0, max_abs(a), max_abs(b)});
}

void require_nonzero(const BlockOperator& x, const char* what) {
  if (!(operator_norm(x) > 0)) throw Error(ErrorCode::ZeroOperator, what);
}

// w rescaled to a partial isometry; throws NotExtremalBPI when it is not one.
BlockOperator as_partial_isometry(const DualPair& p, const BlockOperator& w, const ToleranceConfig& tol) {
  p.primal().check_element(w);
  require_nonzero(w, "zero element");
  if (!is_extremal_bpi(p, w, tol)) throw Error(ErrorCode::NotExtremalBPI, "not an extremal bi-partial isometry");
  return w / cplx(*is_partial_isometry(w, tol));
}

// (psd) a <= b up to eq_tol relative to the larger norm
bool dominated(const BlockOperator& a, const BlockOperator& b, const ToleranceConfig& tol) {
  const double scale = std::max({1e-300, operator_norm(a), operator_norm(b)});
  return min_eigenvalue(BlockOperator(b - a)) >= -tol.eq_tol * scale;
}

// Coefficients scaled to GNS-orthonormal coordinates.
VectorXc gns_coords(const FiniteKacAlgebra& k, const BlockOperator& x) {
  VectorXc c = x.coefficients();
  for (Index i = 0; i < c.size(); ++i) c(i) *= std::sqrt(k.weight_of(i));
  return c;
}

}  // namespace

bool is_extremal(const DualPair& p, const BlockOperator& x, const ToleranceConfig& tol) {
  p.primal().check_element(x);
  require_nonzero(x, "extremality of the zero operator");
  const double l1 = gns_norm(p.primal(), x, 1, tol);
  return std::abs(gns_norm(p.dual(), fourier(p, x), kInf, tol) - l1) <= tol.eq_tol * l1;
}

bool is_extremal_bpi(const DualPair& p, const BlockOperator& x, const ToleranceConfig& tol) {
  return is_partial_isometry(x, tol) && is_partial_isometry(fourier(p, x), tol) && is_extremal(p, x, tol);
}

nlohmann::json to_json(const MinimizerVerdict& v) {
  return {{"entropy_equality", v.entropy_equality},
          {"ds_equality", v.ds_equality},
          {"extremal_bpi", v.extremal_bpi},
          {"bishift", v.bishift},
          {"consistent", v.consistent},
          {"hb_deficit", v.hb_deficit},
          {"ds_product", v.ds_product}};
}

MinimizerVerdict check_main_theorem(const DualPair& p, const BlockOperator& x, const ToleranceConfig& tol) {
  p.primal().check_element(x);
  require_nonzero(x, "minimizer test of the zero operator");
  const BlockOperator u = x / cplx(gns_norm(p.primal(), x, 2, tol));

  MinimizerVerdict v;
  const UPReport r = up_report(p, u, tol);
  v.hb_deficit = r.hb_deficit;
  v.ds_product = r.ds_product;
  v.entropy_equality = std::abs(r.hb_deficit) <= tol.eq_tol;
  v.ds_equality = std::abs(r.ds_product - 1) <= tol.eq_tol;
  v.extremal_bpi = is_extremal_bpi(p, u, tol);
  try {
    const BiShiftCert c = bishift_decompose(p, u, tol);
    const BiShiftCert again = make_bi_shift(p, c.B_g, c.B_h_tilde, c.y, c.B, tol);
    v.bishift = rel_diff(again.x, c.x) <= tol.eq_tol;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotExtremalBPI && e.code() != ErrorCode::ReconstructionFailure &&
        e.code() != ErrorCode::ShiftMismatch && e.code() != ErrorCode::ZeroResult)
      throw;
    v.bishift = false;
  }
  v.consistent = v.entropy_equality == v.ds_equality && v.ds_equality == v.extremal_bpi &&
                 v.extremal_bpi == v.bishift;
  return v;
}

bool SqReport::passed(const ToleranceConfig& tol) const {
  return identity_residual <= tol.eq_tol && partial_isometry_defect <= tol.eq_tol && l1_residual <= tol.eq_tol;
}

nlohmann::json to_json(const SqReport& r) {
  return {{"identity_residual", r.identity_residual},
          {"partial_isometry_defect", r.partial_isometry_defect},
          {"l1_residual", r.l1_residual}};
}

SqReport verify_sq(const DualPair& p, const BlockOperator& w0, const ToleranceConfig& tol) {
  const auto& k = p.primal();
  const BlockOperator w = as_partial_isometry(p, w0, tol);
  const double n2 = std::pow(gns_norm(k, w, 2, tol), 2);
  const BlockOperator rw = k.antipode(w);

  const BlockOperator t = convolve(k, w, rw.adjoint());
  const BlockOperator lhs = t * convolve(k, w.adjoint(), rw);
  const BlockOperator rhs = cplx(n2) * convolve(k, w * w.adjoint(), rw.adjoint() * rw);

  SqReport r;
  r.identity_residual = rel_diff(lhs, rhs);
  const BlockOperator tn = t / cplx(n2);
  const auto mu = operator_norm(tn) > 0 ? is_partial_isometry(tn, tol) : std::nullopt;
  r.partial_isometry_defect = mu ? std::abs(*mu - 1) : kInf;
  const double l1 = gns_norm(k, w, 1, tol);
  r.l1_residual = std::abs(l1 - gns_norm(k, t, 1, tol) / n2) / std::max(1.0, l1);
  return r;
}

QExtraction extract_q(const DualPair& p, const BlockOperator& w0, double max_iter, double conv_tol,
                      const ToleranceConfig& tol) {
  const auto& k = p.primal();
  k.check_element(w0);
  require_nonzero(w0, "Q extraction from the zero operator");
  const BlockOperator w = w0 / cplx(gns_norm(k, w0, 2, tol));
  const BlockOperator t = convolve(k, w, k.antipode(w.adjoint()));
  if (std::abs(operator_norm(t) - 1) > tol.eq_tol)
    throw Error(ErrorCode::PreconditionFailed, "||w * R(w^*)||_inf differs from ||w||_2^2");

  const int cap = std::max(1, static_cast<int>(std::ceil(std::log2(std::max(2.0, max_iter)))));
  QExtraction out;
  BlockOperator a = t.adjoint() * t;
  bool settled = false;
  while (out.steps < cap) {
    BlockOperator next = a * a;
    next = (next + next.adjoint()) / cplx(2);
    ++out.steps;
    const double step = operator_norm(BlockOperator(next - a));
    a = std::move(next);
    if (step < conv_tol) {
      settled = true;
      break;
    }
  }
  if (!settled || !is_projection(a, tol))
    throw Error(ErrorCode::NoConvergence, "iterate did not settle to a projection");
  if (!is_extremal_bpi(p, a, tol)) throw Error(ErrorCode::TheoremViolation, "limit is not an extremal bi-partial isometry");
  out.Q = std::move(a);
  return out;
}

BiShiftCert bishift_decompose(const DualPair& p, const BlockOperator& w0, const ToleranceConfig& tol) {
  const auto& k = p.primal();
  const BlockOperator w = as_partial_isometry(p, w0, tol);
  const double n2 = std::pow(gns_norm(k, w, 2, tol), 2);
  const BlockOperator rw = k.antipode(w);
  const BlockOperator fw = fourier(p, w);

  BiShiftCert c;
  c.B = convolve(k, w, rw.adjoint()) * convolve(k, w.adjoint(), rw) / cplx(n2 * n2);
  c.B_g = w * w.adjoint();
  c.B_h_tilde = fw * fw.adjoint() / cplx(n2 * n2);
  c.y = w;
  c.x = w;
  c.description = "decomposition";
  auto fail = [](const std::string& why) { throw Error(ErrorCode::ReconstructionFailure, why); };
  if (!is_biprojection(p, c.B, tol)) fail("B is not a biprojection");
  c.B_tilde = range_projection(fourier(p, c.B), tol);
  if (!is_shift(p, c.B_g, c.B, ShiftSide::Right, tol)) fail("w w^* is not a right shift of B");
  if (!is_projection(c.B_h_tilde, tol) || !is_shift(p.reverse(), c.B_h_tilde, c.B_tilde, ShiftSide::Right, tol))
    fail("F(w) F(w)^* / ||w||_2^4 is not a right shift of the dual biprojection");
  const BlockOperator rebuilt = convolve(k, inverse_fourier(p, c.B_h_tilde), c.B_g * w);
  if (rel_diff(rebuilt, w) > tol.eq_tol) fail("w differs from its bi-shift reconstruction");
  return c;
}

HardyResult hardy_check(const DualPair& p, const BlockOperator& w, const BlockOperator& x, double c, double c_prime,
                        const ToleranceConfig& tol) {
  const auto& k = p.primal();
  k.check_element(x);
  try {
    bishift_decompose(p, w, tol);
  } catch (const Error& e) {
    throw Error(ErrorCode::PreconditionFailed, std::string("w is not a bi-shift: ") + e.what());
  }
  if (!dominated(modulus(x, tol), cplx(c) * modulus(w, tol), tol))
    throw Error(ErrorCode::HypothesisFailed, "|x| <= C|w| fails");
  if (!dominated(modulus(fourier(p, x), tol), cplx(c_prime) * modulus(fourier(p, w), tol), tol))
    throw Error(ErrorCode::HypothesisFailed, "|F(x)| <= C'|F(w)| fails");

  HardyResult r;
  const double w2 = std::pow(gns_norm(k, w, 2, tol), 2);
  r.mu = k.trace(BlockOperator(w.adjoint() * x)) / w2;
  const double x2 = gns_norm(k, x, 2, tol);
  r.residual = x2 > 0 ? gns_norm(k, BlockOperator(x - r.mu * w), 2, tol) / x2 : 0.0;
  if (r.residual > tol.eq_tol) throw Error(ErrorCode::TheoremViolation, "x is not a scalar multiple of w");
  return r;
}

Index uniqueness_dimension(const DualPair& p, const BlockOperator& b_g, const BlockOperator& b_h_tilde,
                           const ToleranceConfig& tol) {
  const auto& k = p.primal();
  const auto& d = p.dual();
  k.check_element(b_g);
  d.check_element(b_h_tilde);
  const Index n = k.basis_size();
  const BlockOperator off_g = k.unit() - b_g;
  const BlockOperator off_h = d.unit() - b_h_tilde;

  MatrixXc m(2 * n, n);
  for (Index j = 0; j < n; ++j) {
    const BlockOperator f = k.basis_element(j) / cplx(std::sqrt(k.weight_of(j)));
    m.col(j).head(n) = gns_coords(k, BlockOperator(off_g * f));
    m.col(j).tail(n) = gns_coords(d, BlockOperator(off_h * fourier(p, f)));
  }
  Eigen::JacobiSVD<MatrixXc> svd(m);
  const auto& s = svd.singularValues();
  const double cut = tol.rank_tol * std::max(1.0, s.size() ? s(0) : 0.0);
  Index rank = 0;
  while (rank < s.size() && s(rank) > cut) ++rank;
  return n - rank;
}

}  // namespace kac
