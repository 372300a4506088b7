#include "kac/fourier.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include "kac/spectral.hpp"

namespace kac {

BlockOperator fourier(const DualPair& p, const BlockOperator& x) {
  p.primal().check_element(x);
  return p.dual().element(p.fourier_matrix() * x.coefficients());
}

BlockOperator inverse_fourier(const DualPair& p, const BlockOperator& xi) {
  p.dual().check_element(xi);
  return p.primal().element(p.inverse_fourier_matrix() * xi.coefficients());
}

BlockOperator convolve(const FiniteKacAlgebra& k, const BlockOperator& x, const BlockOperator& y) {
  k.check_element(x);
  k.check_element(y);
  // omega(e_i) = phi(R(e_i) x)
  const RowVectorXc omega = k.trace_functional(x) * k.antipode_matrix();
  return k.element(slice_left(omega, k.comultiply(y)));
}

BlockOperator convolve(const DualPair& p, const BlockOperator& x, const BlockOperator& y, Side side) {
  return convolve(side == Side::Primal ? p.primal() : p.dual(), x, y);
}

double entropy(const FiniteKacAlgebra& k, const BlockOperator& x, const ToleranceConfig& tol) {
  k.check_element(x);
  if (!(operator_norm(x) > 0)) throw Error(ErrorCode::ZeroOperator, "entropy of the zero operator");
  const BlockOperator xx = x.adjoint() * x;
  return -k.trace(positive_function(xx, PositiveFunction::xlogx(), tol)).real();
}

double support_measure(const FiniteKacAlgebra& k, const BlockOperator& x, const ToleranceConfig& tol) {
  k.check_element(x);
  return k.trace(range_projection(x, tol)).real();
}

UPReport up_report(const DualPair& p, const BlockOperator& x, const ToleranceConfig& tol) {
  const auto& k = p.primal();
  const auto& d = p.dual();
  k.check_element(x);
  if (!(operator_norm(x) > 0)) throw Error(ErrorCode::ZeroOperator, "uncertainty report of the zero operator");
  const BlockOperator fx = fourier(p, x);
  const double inf = std::numeric_limits<double>::infinity();

  UPReport r;
  r.l1 = gns_norm(k, x, 1);
  r.l2 = gns_norm(k, x, 2);
  r.linf = gns_norm(k, x, inf);
  r.dual_l1 = gns_norm(d, fx, 1);
  r.dual_l2 = gns_norm(d, fx, 2);
  r.dual_linf = gns_norm(d, fx, inf);
  r.entropy = entropy(k, x, tol);
  r.dual_entropy = entropy(d, fx, tol);
  r.hb_deficit = r.entropy + r.dual_entropy + 4 * r.l2 * r.l2 * std::log(r.l2);
  r.support = support_measure(k, x, tol);
  r.dual_support = support_measure(d, fx, tol);
  r.ds_product = r.support * r.dual_support;
  r.minimal = r.hb_deficit <= tol.eq_tol || std::abs(r.ds_product - 1) <= tol.eq_tol;
  return r;
}

nlohmann::json to_json(const UPReport& r) {
  return {{"l1", r.l1},
          {"l2", r.l2},
          {"linf", r.linf},
          {"dual_l1", r.dual_l1},
          {"dual_l2", r.dual_l2},
          {"dual_linf", r.dual_linf},
          {"entropy", r.entropy},
          {"dual_entropy", r.dual_entropy},
          {"hb_deficit", r.hb_deficit},
          {"support", r.support},
          {"dual_support", r.dual_support},
          {"ds_product", r.ds_product},
          {"minimal", r.minimal}};
}

bool InequalityReport::passed(const ToleranceConfig& tol) const {
  return max_violation <= tol.eq_tol && min_hb_deficit >= -10 * tol.eq_tol && min_ds_product >= 1 - tol.eq_tol;
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the pair
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

InequalityReport inequality_suite(const DualPair& p, int samples, std::uint64_t seed, const ToleranceConfig& tol) {
  if (samples < 1) throw Error(ErrorCode::PreconditionFailed, "sample count must be at least 1");
  const auto& k = p.primal();
  const auto& d = p.dual();
  const double inf = std::numeric_limits<double>::infinity();

  InequalityReport rep;
  rep.min_hb_deficit = inf;
  rep.min_ds_product = inf;
  auto below = [&](int id, const char* name, double lhs, double rhs) {
    const double v = std::max(0.0, lhs - rhs) / std::max(1.0, std::abs(rhs));
    rep.rows.push_back({id, name, lhs, rhs, v});
    rep.max_violation = std::max(rep.max_violation, v);
  };
  auto equal = [&](int id, const char* name, double lhs, double rhs) {
    const double v = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
    rep.rows.push_back({id, name, lhs, rhs, v});
    rep.max_violation = std::max(rep.max_violation, v);
  };

  for (int s = 0; s < samples; ++s) {
    std::mt19937_64 rng(sample_seed(seed, static_cast<std::uint64_t>(s)));
    const BlockOperator x = BlockOperator::Gaussian(k.dims(), rng);
    const BlockOperator y = BlockOperator::Gaussian(k.dims(), rng);
    const BlockOperator fx = fourier(p, x);

    below(s, "hausdorff_young_p1", gns_norm(d, fx, inf), gns_norm(k, x, 1));
    below(s, "hausdorff_young_p4/3", gns_norm(d, fx, 4.0), gns_norm(k, x, 4.0 / 3.0));
    equal(s, "plancherel", gns_norm(d, fx, 2), gns_norm(k, x, 2));

    const BlockOperator xy = convolve(k, x, y);
    below(s, "young_1_1_1", gns_norm(k, xy, 1), gns_norm(k, x, 1) * gns_norm(k, y, 1));
    below(s, "young_1_2_2", gns_norm(k, xy, 2), gns_norm(k, x, 1) * gns_norm(k, y, 2));
    below(s, "young_2_2_inf", gns_norm(k, xy, inf), gns_norm(k, x, 2) * gns_norm(k, y, 2));

    const UPReport r = up_report(p, x, tol);
    const double n2 = r.l2 * r.l2;
    below(s, "hirschman_beckner", -4 * n2 * std::log(r.l2), r.entropy + r.dual_entropy);
    below(s, "donoho_stark", 1.0, r.ds_product);
    rep.min_hb_deficit = std::min(rep.min_hb_deficit, r.hb_deficit);
    rep.min_ds_product = std::min(rep.min_ds_product, r.ds_product);
  }
  return rep;
}

std::string inequality_csv(const std::vector<InequalityRow>& rows) {
  std::ostringstream out;
  out << "sample_id,inequality_name,lhs,rhs,violation\n" << std::setprecision(17);
  for (const auto& r : rows)
    out << r.sample_id << ',' << r.inequality_name << ',' << r.lhs << ',' << r.rhs << ',' << r.violation << '\n';
  return out.str();
}

}  // namespace kac
