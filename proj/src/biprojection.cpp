#include "kac/biprojection.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "kac/fourier.hpp"
#include "kac/io.hpp"
#include "kac/spectral.hpp"

namespace kac {

namespace {

double scale_of(const BlockOperator& x) { return std::max(1.0, max_abs(x)); }

bool close(const BlockOperator& a, const BlockOperator& b, double tol) {
  return max_abs(BlockOperator(a - b)) <= tol * std::max(scale_of(a), scale_of(b));
}

std::string set_label(const std::vector<int>& s) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << s[i];
  out << '}';
  return out.str();
}

// shift equation only; B is assumed to be a certified biprojection
bool shift_holds(const FiniteKacAlgebra& k, const BlockOperator& x, const BlockOperator& b, ShiftSide side,
                 const ToleranceConfig& tol) {
  const double phi_b = k.trace(b).real();
  if (std::abs(k.trace(x).real() - phi_b) > tol.eq_tol * std::max(1.0, phi_b)) return false;
  const BlockOperator lhs = side == ShiftSide::Left ? convolve(k, x, b) : convolve(k, b, x);
  return close(lhs, cplx(phi_b) * x, tol.eq_tol);
}

void push_unique(std::vector<LabeledProjection>& out, BlockOperator x, std::string label) {
  for (const auto& e : out)
    if (close(e.projection, x, 1e-8)) return;
  out.push_back({std::move(x), std::move(label)});
}

std::vector<LabeledProjection> central_projections(const FiniteKacAlgebra& k) {
  const std::size_t blocks = k.dims().size();
  std::vector<LabeledProjection> out;
  if (blocks > 16) return out;
  for (std::uint32_t mask = 1; mask < (1u << blocks); ++mask) {
    std::vector<MatrixXc> bl;
    std::vector<int> chosen;
    for (std::size_t i = 0; i < blocks; ++i) {
      const Index d = k.dims()[i];
      const bool on = mask & (1u << i);
      bl.push_back(on ? MatrixXc(MatrixXc::Identity(d, d)) : MatrixXc(MatrixXc::Zero(d, d)));
      if (on) chosen.push_back(static_cast<int>(i));
    }
    out.push_back({BlockOperator(std::move(bl)), "central blocks " + set_label(chosen)});
  }
  return out;
}

// Twisted subgroup projections (1/|H|) sum chi(h) u_h and their conjugates.
std::vector<LabeledProjection> twisted_projections(const GroupRealization& g) {
  std::vector<LabeledProjection> out;
  for (const auto& h : g.table.subgroups()) {
    const auto chars = linear_characters(g.table.restrict_to(h));
    for (std::size_t c = 0; c < chars.size(); ++c) {
      BlockOperator p = BlockOperator::Zero(g.elements.front().dims());
      for (std::size_t i = 0; i < h.size(); ++i) p = p + chars[c][i] * g.elements[static_cast<std::size_t>(h[i])];
      p = p / cplx(static_cast<double>(h.size()));
      for (int x = 0; x < g.table.order(); ++x) {
        const auto& u = g.elements[static_cast<std::size_t>(x)];
        std::ostringstream label;
        label << "P_" << set_label(h) << "^chi" << c;
        if (x != g.table.identity()) label << " conj " << x;
        push_unique(out, u * p * u.adjoint(), label.str());
      }
    }
  }
  return out;
}

std::vector<LabeledProjection> coset_indicators(const GroupRealization& g) {
  std::vector<LabeledProjection> out;
  for (const auto& h : g.table.subgroups())
    for (bool left : {true, false})
      for (const auto& c : g.table.cosets(h, left)) {
        BlockOperator x = BlockOperator::Zero(g.elements.front().dims());
        for (int e : c) x = x + g.elements[static_cast<std::size_t>(e)];
        push_unique(out, std::move(x), "1_" + set_label(c));
      }
  return out;
}

// Scales x to a partial isometry with its first significant coefficient real and positive.
cplx normalizer(const BlockOperator& x, const ToleranceConfig& tol) {
  const VectorXc c = x.coefficients();
  const double top = c.cwiseAbs().maxCoeff();
  cplx phase = 1;
  for (Index i = 0; i < c.size(); ++i)
    if (std::abs(c(i)) > 1e-8 * top) {
      phase = std::conj(c(i)) / std::abs(c(i));
      break;
    }
  const auto mu = is_partial_isometry(x, tol);
  return phase / (mu ? *mu : operator_norm(x));
}

}  // namespace

bool is_biprojection(const DualPair& p, const BlockOperator& b, const ToleranceConfig& tol) {
  p.primal().check_element(b);
  if (!(operator_norm(b) > 0.5) || !is_projection(b, tol)) return false;
  return projection_multiple(fourier(p, b), tol).has_value();
}

bool is_group_like(const FiniteKacAlgebra& k, const BlockOperator& b, const ToleranceConfig& tol) {
  k.check_element(b);
  if (!is_projection(b, tol)) throw Error(ErrorCode::NotProjection, "group-like test needs a projection");
  const BlockOperator db = k.tensor_from_pairs(k.comultiply(b));
  const BlockOperator one = k.unit();
  const BlockOperator bb = tensor(b, b);
  return close(BlockOperator(db * tensor(b, one)), bb, tol.eq_tol) &&
         close(BlockOperator(db * tensor(one, b)), bb, tol.eq_tol);
}

bool is_shift(const DualPair& p, const BlockOperator& x, const BlockOperator& b, ShiftSide side,
              const ToleranceConfig& tol) {
  if (!is_biprojection(p, b, tol)) throw Error(ErrorCode::NotBiprojection, "shift reference is not a biprojection");
  p.primal().check_element(x);
  if (!is_projection(x, tol)) throw Error(ErrorCode::NotProjection, "a shift must be a projection");
  return shift_holds(p.primal(), x, b, side, tol);
}

nlohmann::json to_json(const BiShiftCert& c) {
  return {{"description", c.description},   {"B", element_to_json(c.B)},
          {"B_tilde", element_to_json(c.B_tilde)}, {"B_g", element_to_json(c.B_g)},
          {"B_h_tilde", element_to_json(c.B_h_tilde)}, {"y", element_to_json(c.y)},
          {"x", element_to_json(c.x)}};
}

BiShiftCert make_bi_shift(const DualPair& p, const BlockOperator& b_g, const BlockOperator& b_h_tilde,
                          const BlockOperator& y, const std::optional<BlockOperator>& b, const ToleranceConfig& tol) {
  const auto& k = p.primal();
  const auto& d = p.dual();
  k.check_element(b_g);
  k.check_element(y);
  d.check_element(b_h_tilde);
  if (!is_projection(b_g, tol) || !is_projection(b_h_tilde, tol))
    throw Error(ErrorCode::NotProjection, "shifts must be projections");
  const double phi_g = k.trace(b_g).real();
  if (!(phi_g > tol.eq_tol)) throw Error(ErrorCode::ShiftMismatch, "B_g is zero");

  BiShiftCert cert;
  cert.B = convolve(k, b_g, k.antipode(b_g)) / cplx(phi_g);
  if (!is_biprojection(p, cert.B, tol))
    throw Error(ErrorCode::ShiftMismatch, "B_g * R(B_g) / phi(B_g) is not a biprojection");
  if (b && !close(*b, cert.B, tol.eq_tol))
    throw Error(ErrorCode::ShiftMismatch, "given biprojection differs from the one determined by B_g");
  if (!shift_holds(k, b_g, cert.B, ShiftSide::Right, tol))
    throw Error(ErrorCode::ShiftMismatch, "B_g is not a right shift of B");
  cert.B_tilde = range_projection(fourier(p, cert.B), tol);
  if (!is_shift(p.reverse(), b_h_tilde, cert.B_tilde, ShiftSide::Right, tol))
    throw Error(ErrorCode::ShiftMismatch, "B_h_tilde is not a right shift of the dual biprojection");

  cert.B_g = b_g;
  cert.B_h_tilde = b_h_tilde;
  cert.y = y;
  const BlockOperator kernel = inverse_fourier(p, b_h_tilde);
  const BlockOperator gy = b_g * y;
  cert.x = convolve(k, kernel, gy);
  const double bound = gns_norm(k, kernel, 1) * operator_norm(gy);
  if (!(bound > 0) || operator_norm(cert.x) <= tol.eq_tol * bound)
    throw Error(ErrorCode::ZeroResult, "bi-shift vanishes for this witness");

  if (!close(range_projection(cert.x, tol), b_g, tol.eq_tol) ||
      !close(range_projection(fourier(p, cert.x), tol), b_h_tilde, tol.eq_tol))
    throw Error(ErrorCode::ShiftMismatch, "bi-shift supports differ from B_g and B_h_tilde");
  const double ds = support_measure(k, cert.x, tol) * support_measure(d, fourier(p, cert.x), tol);
  if (std::abs(ds - 1) > tol.eq_tol) throw Error(ErrorCode::ShiftMismatch, "bi-shift does not attain S(x)S(F(x)) = 1");
  return cert;
}

std::vector<LabeledProjection> enumerate_biprojections(const DualPair& p, const std::vector<BlockOperator>& extra,
                                                       Index cap, const ToleranceConfig& tol) {
  const auto& k = p.primal();
  if (k.basis_size() > cap)
    throw Error(ErrorCode::DimensionCap, "algebra dimension " + std::to_string(k.basis_size()) + " exceeds the cap");
  std::vector<LabeledProjection> candidates;
  if (k.group()) {
    const auto& g = *k.group();
    for (const auto& h : g.table.subgroups()) {
      BlockOperator x = BlockOperator::Zero(k.dims());
      for (int e : h) x = x + g.elements[static_cast<std::size_t>(e)];
      if (g.kind == RealizationKind::PointMasses)
        candidates.push_back({x, "1_" + set_label(h)});
      else
        candidates.push_back({x / cplx(static_cast<double>(h.size())), "P_" + set_label(h)});
    }
  } else {
    candidates = central_projections(k);
  }
  for (std::size_t i = 0; i < extra.size(); ++i) candidates.push_back({extra[i], "candidate " + std::to_string(i)});

  std::vector<LabeledProjection> out;
  for (auto& c : candidates)
    if (is_biprojection(p, c.projection, tol)) push_unique(out, std::move(c.projection), std::move(c.label));
  return out;
}

std::vector<LabeledProjection> enumerate_shifts(const DualPair& p, const BlockOperator& b, ShiftSide side,
                                                const std::vector<BlockOperator>& extra, const ToleranceConfig& tol) {
  const auto& k = p.primal();
  if (!is_biprojection(p, b, tol)) throw Error(ErrorCode::NotBiprojection, "shift reference is not a biprojection");
  std::vector<LabeledProjection> candidates;
  if (k.group())
    candidates = k.group()->kind == RealizationKind::PointMasses ? coset_indicators(*k.group())
                                                                 : twisted_projections(*k.group());
  else
    candidates = central_projections(k);
  for (std::size_t i = 0; i < extra.size(); ++i) candidates.push_back({extra[i], "candidate " + std::to_string(i)});

  const double phi_b = k.trace(b).real();
  std::vector<LabeledProjection> out;
  for (auto& c : candidates) {
    if (std::abs(k.trace(c.projection).real() - phi_b) > tol.eq_tol * std::max(1.0, phi_b)) continue;
    if (!is_projection(c.projection, tol)) continue;
    if (shift_holds(k, c.projection, b, side, tol)) push_unique(out, std::move(c.projection), std::move(c.label));
  }
  return out;
}

std::vector<BiShiftCert> enumerate_bi_shifts(const DualPair& p, std::uint64_t seed, Index cap,
                                             const ToleranceConfig& tol) {
  const auto& k = p.primal();
  std::mt19937_64 rng(seed);
  const BlockOperator y = BlockOperator::Gaussian(k.dims(), rng);
  std::vector<BiShiftCert> out;
  for (const auto& b : enumerate_biprojections(p, {}, cap, tol)) {
    const BlockOperator bt = range_projection(fourier(p, b.projection), tol);
    const auto primal_shifts = enumerate_shifts(p, b.projection, ShiftSide::Right, {}, tol);
    const auto dual_shifts = enumerate_shifts(p.reverse(), bt, ShiftSide::Right, {}, tol);
    for (const auto& g : primal_shifts)
      for (const auto& h : dual_shifts) {
        BiShiftCert c = make_bi_shift(p, g.projection, h.projection, y, b.projection, tol);
        const cplx s = normalizer(c.x, tol);
        c.x = s * c.x;
        c.y = s * c.y;
        c.description = "B=" + b.label + " B_g=" + g.label + " B_h=" + h.label;
        out.push_back(std::move(c));
      }
  }
  return out;
}

}  // namespace kac
