#include "kac/kac_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kac/spectral.hpp"

namespace kac {

namespace {

// a * NB + b -> flattened position of e_a (x) e_b in the tensor block layout.
std::vector<Index> pair_layout(const Dims& da, const Dims& db) {
  const auto ua = matrix_units(da);
  const auto ub = matrix_units(db);
  const auto toff = block_offsets(tensor_dims(da, db));
  std::vector<Index> map(ua.size() * ub.size());
  for (std::size_t a = 0; a < ua.size(); ++a)
    for (std::size_t b = 0; b < ub.size(); ++b) {
      const auto& x = ua[a];
      const auto& y = ub[b];
      const Index dj = db[y.block];
      const Index side = da[x.block] * dj;
      const Index row = x.row * dj + y.row;
      const Index col = x.col * dj + y.col;
      map[a * ub.size() + b] = toff[x.block * db.size() + y.block] + row * side + col;
    }
  return map;
}

MatrixXc reshape_pairs(const VectorXc& v, Index n) {
  MatrixXc p(n, n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) p(a, b) = v(a * n + b);
  return p;
}

double max_abs(const MatrixXc& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

FiniteKacAlgebra::FiniteKacAlgebra(Dims dims, std::vector<double> trace_weights, MatrixXc comul, MatrixXc antipode,
                                   RowVectorXc counit, std::string name, std::optional<GroupRealization> group)
    : dims_(std::move(dims)),
      weights_(std::move(trace_weights)),
      comul_(std::move(comul)),
      antipode_(std::move(antipode)),
      counit_(std::move(counit)),
      name_(std::move(name)),
      group_(std::move(group)) {
  if (dims_.empty()) throw Error(ErrorCode::InvalidShape, "algebra needs at least one block");
  for (Index d : dims_)
    if (d <= 0) throw Error(ErrorCode::InvalidShape, "block dimensions must be positive");
  if (weights_.size() != dims_.size()) throw Error(ErrorCode::InvalidShape, "one trace weight per block required");
  n_ = kac::basis_size(dims_);
  if (comul_.rows() != n_ * n_ || comul_.cols() != n_)
    throw Error(ErrorCode::InvalidShape, "comultiplication tensor has the wrong shape");
  if (antipode_.rows() != n_ || antipode_.cols() != n_)
    throw Error(ErrorCode::InvalidShape, "antipode matrix has the wrong shape");
  if (counit_.size() != n_) throw Error(ErrorCode::InvalidShape, "counit has the wrong length");
  units_ = matrix_units(dims_);
  offsets_ = block_offsets(dims_);
  for (const auto& u : units_) block_of_.push_back(u.block);
  pair_to_tensor_ = pair_layout(dims_, dims_);
  if (group_)
    for (const auto& e : group_->elements)
      if (e.dims() != dims_) throw Error(ErrorCode::InvalidShape, "group realization has mismatched elements");
}

void FiniteKacAlgebra::check_element(const BlockOperator& x) const {
  if (x.dims() != dims_) throw Error(ErrorCode::AlgebraMismatch, "element does not belong to algebra " + name_);
}

cplx FiniteKacAlgebra::trace(const BlockOperator& x) const {
  check_element(x);
  cplx s = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) s += weights_[i] * x.block(i).trace();
  return s;
}

RowVectorXc FiniteKacAlgebra::trace_functional(const BlockOperator& x) const {
  check_element(x);
  RowVectorXc r(n_);
  for (Index k = 0; k < n_; ++k) {
    const auto& u = units_[k];
    r(k) = weights_[u.block] * x.block(u.block)(u.col, u.row);
  }
  return r;
}

BlockOperator FiniteKacAlgebra::density_of(const RowVectorXc& functional) const {
  VectorXc c(n_);
  for (Index k = 0; k < n_; ++k) {
    const auto& u = units_[k];
    // coefficient of e_{pq} in x is omega(e_{qp}) / t
    c(k) = functional(offsets_[u.block] + u.col * dims_[u.block] + u.row) / weights_[u.block];
  }
  return element(c);
}

BlockOperator FiniteKacAlgebra::antipode(const BlockOperator& x) const {
  check_element(x);
  return element(antipode_ * x.coefficients());
}

cplx FiniteKacAlgebra::counit(const BlockOperator& x) const {
  check_element(x);
  return (counit_ * x.coefficients())(0);
}

MatrixXc FiniteKacAlgebra::comultiply(const BlockOperator& x) const {
  check_element(x);
  return reshape_pairs(comul_ * x.coefficients(), n_);
}

BlockOperator FiniteKacAlgebra::tensor_from_pairs(const MatrixXc& pairs) const {
  VectorXc t(n_ * n_);
  for (Index a = 0; a < n_; ++a)
    for (Index b = 0; b < n_; ++b) t(pair_to_tensor_[a * n_ + b]) = pairs(a, b);
  return BlockOperator::FromCoefficients(tensor_square_dims(), t);
}

MatrixXc FiniteKacAlgebra::pairs_from_tensor(const BlockOperator& t) const {
  const VectorXc v = t.coefficients();
  MatrixXc p(n_, n_);
  for (Index a = 0; a < n_; ++a)
    for (Index b = 0; b < n_; ++b) p(a, b) = v(pair_to_tensor_[a * n_ + b]);
  return p;
}

Index FiniteKacAlgebra::unit_product(Index a, Index b) const {
  const auto& x = units_[a];
  const auto& y = units_[b];
  if (x.block != y.block || x.col != y.row) return -1;
  return offsets_[x.block] + x.row * dims_[x.block] + y.col;
}

VectorXc slice_left(const RowVectorXc& omega, const MatrixXc& pairs) { return (omega * pairs).transpose(); }

VectorXc slice_right(const MatrixXc& pairs, const RowVectorXc& omega) { return pairs * omega.transpose(); }

bool AxiomReport::passed() const {
  return std::all_of(residuals.begin(), residuals.end(),
                     [&](const AxiomResidual& r) { return std::isfinite(r.residual) && r.residual < tolerance; });
}

double AxiomReport::max_residual() const {
  double m = 0;
  for (const auto& r : residuals) m = std::max(m, r.residual);
  return m;
}

double AxiomReport::residual(const std::string& name) const {
  for (const auto& r : residuals)
    if (r.name == name) return r.residual;
  throw Error(ErrorCode::PreconditionFailed, "no axiom named " + name);
}

AxiomReport verify_axioms(const FiniteKacAlgebra& k, const ToleranceConfig& tol) {
  const Index n = k.basis_size();
  const MatrixXc& C = k.comul_matrix();
  const MatrixXc& R = k.antipode_matrix();
  const RowVectorXc& eps = k.counit_row();
  const RowVectorXc phi = k.trace_functional(k.unit());
  const VectorXc one = k.unit().coefficients();
  const auto units = matrix_units(k.dims());
  const auto offsets = block_offsets(k.dims());
  auto star_index = [&](Index a) {
    const auto& u = units[a];
    return offsets[u.block] + u.col * k.dims()[u.block] + u.row;
  };

  struct Entry {
    Index x, y;
    cplx v;
  };
  std::vector<MatrixXc> delta(n);
  std::vector<std::vector<Entry>> nonzero(n);
  for (Index a = 0; a < n; ++a) {
    delta[a] = reshape_pairs(C.col(a), n);
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < n; ++y)
        if (delta[a](x, y) != cplx(0)) nonzero[a].push_back({x, y, delta[a](x, y)});
  }

  double mult = 0, star = 0, coassoc = 0, cl = 0, cr = 0, cmul = 0, li = 0, ri = 0, tr = 0;
  double r_inv = 0, r_anti = 0, r_star = 0, r_comul = 0;
  MatrixXc prod(n, n);
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      const Index ab = k.unit_product(a, b);
      const Index ba = k.unit_product(b, a);

      // Delta(e_a) Delta(e_b) computed on the sparse pair expansion
      prod.setZero();
      for (const auto& p : nonzero[a])
        for (const auto& q : nonzero[b]) {
          const Index u = k.unit_product(p.x, q.x);
          const Index w = k.unit_product(p.y, q.y);
          if (u >= 0 && w >= 0) prod(u, w) += p.v * q.v;
        }
      mult = std::max(mult, ab >= 0 ? max_abs(MatrixXc(delta[ab] - prod)) : max_abs(prod));

      const cplx e_ab = ab >= 0 ? eps(ab) : cplx(0);
      cmul = std::max(cmul, std::abs(e_ab - eps(a) * eps(b)));

      const cplx phi_ab = ab >= 0 ? phi(ab) : cplx(0);
      const cplx phi_ba = ba >= 0 ? phi(ba) : cplx(0);
      tr = std::max(tr, std::abs(phi_ab - phi_ba));

      // R(e_a e_b) = R(e_b) R(e_a)
      const VectorXc r_ab = ab >= 0 ? VectorXc(R.col(ab)) : VectorXc::Zero(n);
      const BlockOperator rhs = k.element(R.col(b)) * k.element(R.col(a));
      r_anti = std::max(r_anti, max_abs(MatrixXc(r_ab - rhs.coefficients())));
    }

    // Delta(e_a^*) = Delta(e_a)^*
    const MatrixXc& ds = delta[star_index(a)];
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < n; ++y)
        star = std::max(star, std::abs(ds(star_index(x), star_index(y)) - std::conj(delta[a](x, y))));

    const MatrixXc left = C * delta[a];                 // (Delta (x) id) Delta(e_a): rows x*N+y, cols z
    const MatrixXc right = delta[a] * C.transpose();    // (id (x) Delta) Delta(e_a): rows x, cols y*N+z
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < n; ++y)
        for (Index z = 0; z < n; ++z)
          coassoc = std::max(coassoc, std::abs(left(x * n + y, z) - right(x, y * n + z)));

    VectorXc ea = VectorXc::Zero(n);
    ea(a) = 1;
    cl = std::max(cl, max_abs(MatrixXc(slice_left(eps, delta[a]) - ea)));
    cr = std::max(cr, max_abs(MatrixXc(slice_right(delta[a], eps) - ea)));
    li = std::max(li, max_abs(MatrixXc(slice_right(delta[a], phi) - phi(a) * one)));
    ri = std::max(ri, max_abs(MatrixXc(slice_left(phi, delta[a]) - phi(a) * one)));

    const VectorXc ra = R.col(a);
    r_star = std::max(r_star, max_abs(MatrixXc(R.col(star_index(a)) - k.element(ra).adjoint().coefficients())));
    const MatrixXc rr = R * delta[a] * R.transpose();
    const MatrixXc flipped = reshape_pairs(C * ra, n).transpose();
    r_comul = std::max(r_comul, max_abs(MatrixXc(rr - flipped)));
  }
  r_inv = max_abs(MatrixXc(R * R - MatrixXc::Identity(n, n)));

  const BlockOperator unit_t = k.tensor_from_pairs(k.comultiply(k.unit()));
  const double unital = max_abs(BlockOperator(unit_t - BlockOperator::Identity(k.tensor_square_dims())));
  const double counit_unital = std::abs(k.counit(k.unit()) - cplx(1));
  const double r_trace = max_abs(MatrixXc(phi * R - phi));

  double positivity = 0;
  for (double t : k.trace_weights())
    if (!(t > 0)) positivity = std::max(positivity, std::isfinite(t) ? 1.0 + std::abs(t) : 1.0);

  AxiomReport rep;
  rep.tolerance = tol.eq_tol;
  rep.residuals = {
      {"comultiplication_multiplicative", mult},
      {"comultiplication_star", star},
      {"comultiplication_unital", unital},
      {"coassociativity", coassoc},
      {"counit_left", cl},
      {"counit_right", cr},
      {"counit_multiplicative", cmul},
      {"counit_unital", counit_unital},
      {"left_invariance", li},
      {"right_invariance", ri},
      {"trace_faithful", positivity},
      {"traciality", tr},
      {"antipode_involutive", r_inv},
      {"antipode_antimultiplicative", r_anti},
      {"antipode_star", r_star},
      {"antipode_comultiplication", r_comul},
      {"antipode_trace_invariant", r_trace},
  };
  return rep;
}

double gns_norm(const FiniteKacAlgebra& k, const BlockOperator& x, double p, const ToleranceConfig& tol) {
  (void)tol;
  k.check_element(x);
  if (std::isnan(p) || p < 1) throw Error(ErrorCode::BadExponent, "p must be >= 1 or infinity");
  double top = 0, sum = 0;
  for (std::size_t i = 0; i < x.block_count(); ++i) {
    Eigen::JacobiSVD<MatrixXc> svd(x.block(i));
    const auto& s = svd.singularValues();
    if (s.size() > 0) top = std::max(top, s(0));
    if (!std::isinf(p))
      for (Index j = 0; j < s.size(); ++j) sum += k.trace_weights()[i] * std::pow(s(j), p);
  }
  return std::isinf(p) ? top : std::pow(sum, 1.0 / p);
}

FiniteKacAlgebra tensor_product(const FiniteKacAlgebra& a, const FiniteKacAlgebra& b) {
  const Index na = a.basis_size(), nb = b.basis_size(), n = na * nb;
  const auto map = pair_layout(a.dims(), b.dims());
  auto idx = [&](Index x, Index y) { return map[x * nb + y]; };

  std::vector<double> weights;
  for (double ta : a.trace_weights())
    for (double tb : b.trace_weights()) weights.push_back(ta * tb);

  MatrixXc comul = MatrixXc::Zero(n * n, n);
  MatrixXc antipode = MatrixXc::Zero(n, n);
  RowVectorXc counit(n);
  const MatrixXc& ca = a.comul_matrix();
  const MatrixXc& cb = b.comul_matrix();
  for (Index x = 0; x < na; ++x)
    for (Index y = 0; y < nb; ++y) {
      const Index col = idx(x, y);
      counit(col) = a.counit_row()(x) * b.counit_row()(y);
      for (Index x2 = 0; x2 < na; ++x2)
        for (Index y2 = 0; y2 < nb; ++y2)
          antipode(idx(x2, y2), col) = a.antipode_matrix()(x2, x) * b.antipode_matrix()(y2, y);
      for (Index p = 0; p < na * na; ++p) {
        const cplx va = ca(p, x);
        if (va == cplx(0)) continue;
        for (Index q = 0; q < nb * nb; ++q) {
          const cplx vb = cb(q, y);
          if (vb == cplx(0)) continue;
          const Index u1 = idx(p / na, q / nb);
          const Index u2 = idx(p % na, q % nb);
          comul(u1 * n + u2, col) += va * vb;
        }
      }
    }

  std::optional<GroupRealization> group;
  if (a.group() && b.group() && a.group()->kind == b.group()->kind) {
    GroupRealization g;
    g.table = direct_product(a.group()->table, b.group()->table);
    g.kind = a.group()->kind;
    for (const auto& ea : a.group()->elements)
      for (const auto& eb : b.group()->elements) g.elements.push_back(tensor(ea, eb));
    group = std::move(g);
  }
  return FiniteKacAlgebra(tensor_dims(a.dims(), b.dims()), std::move(weights), std::move(comul), std::move(antipode),
                          std::move(counit), a.name() + "(x)" + b.name(), std::move(group));
}

}  // namespace kac
