#include "kac/dual_pair.hpp"

#include <cmath>

#include "kac/error.hpp"
#include "kac/star_decomposition.hpp"

namespace kac {

namespace {

void drop_roundoff(MatrixXc& m, double scale) {
  const double cut = 1e-13 * std::max(1.0, scale);
  for (Index i = 0; i < m.size(); ++i) {
    cplx& v = m.data()[i];
    if (std::abs(v.real()) < cut) v.real(0);
    if (std::abs(v.imag()) < cut) v.imag(0);
  }
}

double max_abs_sparse(const SparseMatrixXc& m) {
  double r = 0;
  for (Index k = 0; k < m.outerSize(); ++k)
    for (SparseMatrixXc::InnerIterator it(m, k); it; ++it) r = std::max(r, std::abs(it.value()));
  return r;
}

// F(e_i) on H for every basis element i:
// <f_a, F(e_i) f_b> = sqrt(t_b / t_a) t_i conj(C[(i, b), a]).
std::vector<MatrixXc> fourier_operators(const FiniteKacAlgebra& k) {
  const Index n = k.basis_size();
  const MatrixXc& c = k.comul_matrix();
  std::vector<MatrixXc> ops(static_cast<std::size_t>(n), MatrixXc::Zero(n, n));
  for (Index a = 0; a < n; ++a)
    for (Index row = 0; row < n * n; ++row) {
      const cplx v = c(row, a);
      if (v == cplx(0)) continue;
      const Index i = row / n, b = row % n;
      ops[static_cast<std::size_t>(i)](a, b) = std::sqrt(k.weight_of(b) / k.weight_of(a)) * k.weight_of(i) * std::conj(v);
    }
  return ops;
}

SparseMatrixXc multiplicative_unitary(const FiniteKacAlgebra& k) {
  // W^*(f_a (x) f_b) = sum_{ij} C[(i,j), b] sqrt(t_j / t_b) f_{e_i e_a} (x) f_j
  const Index n = k.basis_size();
  const MatrixXc& c = k.comul_matrix();
  std::vector<Eigen::Triplet<cplx>> entries;
  for (Index b = 0; b < n; ++b)
    for (Index row = 0; row < n * n; ++row) {
      const cplx v = c(row, b);
      if (v == cplx(0)) continue;
      const Index i = row / n, j = row % n;
      const double s = std::sqrt(k.weight_of(j) / k.weight_of(b));
      for (Index a = 0; a < n; ++a) {
        const Index m = k.unit_product(i, a);
        if (m >= 0) entries.emplace_back(m * n + j, a * n + b, v * s);
      }
    }
  SparseMatrixXc w_star(n * n, n * n);
  w_star.setFromTriplets(entries.begin(), entries.end());
  return SparseMatrixXc(w_star.adjoint());
}

}  // namespace

struct DualPairBuilder {
  static DualPair build(const FiniteKacAlgebra& k, const DualOptions& opt) {
    if (opt.check_axioms) {
      const auto rep = verify_axioms(k, opt.tol);
      if (!rep.passed())
        throw Error(ErrorCode::AxiomFailure,
                    "algebra " + k.name() + " fails its axioms (max residual " + std::to_string(rep.max_residual()) + ")");
    }
    const Index n = k.basis_size();
    const auto ops = fourier_operators(k);
    const auto dec = decompose_star_algebra(ops, opt.seed);
    if (basis_size(dec.dims) != n)
      throw Error(ErrorCode::BlockDecompositionFailure, "dual dimension differs from the primal dimension");

    DualPair p;
    p.primal_ = k;
    p.embeddings_ = dec.isometries;
    p.phi_.resize(n, n);
    for (Index i = 0; i < n; ++i) p.phi_.col(i) = dec.compress(ops[static_cast<std::size_t>(i)]).coefficients();
    Eigen::FullPivLU<MatrixXc> lu(p.phi_);
    if (!lu.isInvertible()) throw Error(ErrorCode::BlockDecompositionFailure, "Fourier matrix is singular");
    p.phi_inv_ = lu.inverse();

    const auto& dims = dec.dims;
    const auto units = matrix_units(dims);

    // Plancherel fixes the dual trace: t^_i = |F^{-1}(e^)|_2^2 for a matrix unit e^ of block i
    std::vector<double> weights(dims.size(), 0.0);
    for (Index q = 0; q < n; ++q) {
      const VectorXc x = p.phi_inv_.col(q);
      double s = 0;
      for (Index r = 0; r < n; ++r) s += k.weight_of(r) * std::norm(x(r));
      const std::size_t blk = units[static_cast<std::size_t>(q)].block;
      weights[blk] += s / static_cast<double>(dims[blk] * dims[blk]);
    }

    // Dual comultiplication from the pairing <F(x), y> = phi(y x):
    // <Delta^(F(x)), y1 (x) y2> = phi(y2 y1 x).
    // G(p, i) = phi(e_p x_i) with x_i = F^{-1}(e^_i); then C^k = G^{-1} T^k G^{-T}
    // where T^k(p, q) = phi(e_q e_p x_k) = G(e_q e_p, k).
    const auto primal_units = matrix_units(k.dims());
    const auto primal_offsets = block_offsets(k.dims());
    MatrixXc g(n, n);
    for (Index q = 0; q < n; ++q) {
      const auto& u = primal_units[static_cast<std::size_t>(q)];
      const Index star = primal_offsets[u.block] + u.col * k.dims()[u.block] + u.row;
      g.row(q) = k.weight_of(q) * p.phi_inv_.row(star);
    }
    Eigen::FullPivLU<MatrixXc> glu(g);
    const MatrixXc g_inv = glu.inverse();
    MatrixXc comul(n * n, n);
    MatrixXc tk(n, n);
    for (Index col = 0; col < n; ++col) {
      tk.setZero();
      for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b) {
          const Index m = k.unit_product(b, a);
          if (m >= 0) tk(a, b) = g(m, col);
        }
      const MatrixXc ck = g_inv * tk * g_inv.transpose();
      comul.col(col) = ck.reshaped<Eigen::RowMajor>();
    }
    MatrixXc antipode = p.phi_ * k.antipode_matrix() * p.phi_inv_;
    RowVectorXc phi_row = RowVectorXc::Zero(n);
    for (std::size_t b = 0; b < k.dims().size(); ++b)
      for (Index r = 0; r < k.dims()[b]; ++r) phi_row(primal_offsets[b] + r * k.dims()[b] + r) = k.trace_weights()[b];
    RowVectorXc counit = phi_row * p.phi_inv_;
    drop_roundoff(comul, comul.cwiseAbs().maxCoeff());
    drop_roundoff(antipode, antipode.cwiseAbs().maxCoeff());
    MatrixXc counit_m = counit;
    drop_roundoff(counit_m, counit_m.cwiseAbs().maxCoeff());
    counit = counit_m;

    std::optional<GroupRealization> group;
    if (k.group()) {
      GroupRealization gr;
      gr.table = k.group()->table;
      gr.kind = k.group()->kind == RealizationKind::PointMasses ? RealizationKind::GroupUnitaries
                                                                : RealizationKind::PointMasses;
      for (const auto& e : k.group()->elements) {
        MatrixXc c = p.phi_ * e.coefficients();
        drop_roundoff(c, 1.0);
        gr.elements.push_back(BlockOperator::FromCoefficients(dims, c));
      }
      group = std::move(gr);
    }
    p.dual_ = FiniteKacAlgebra(dims, std::move(weights), std::move(comul), std::move(antipode), std::move(counit),
                               "dual(" + k.name() + ")", std::move(group));
    p.w_ = multiplicative_unitary(k);

    if (opt.with_reverse) {
      DualOptions inner = opt;
      inner.with_reverse = false;
      p.reverse_ = std::make_shared<const DualPair>(build(p.dual_, inner));
    }
    return p;
  }
};

MatrixXc DualPair::fourier_operator(const BlockOperator& x) const {
  primal_.check_element(x);
  const Index n = primal_.basis_size();
  const VectorXc coeffs = x.coefficients();
  MatrixXc op = MatrixXc::Zero(n, n);
  const MatrixXc& c = primal_.comul_matrix();
  for (Index a = 0; a < n; ++a)
    for (Index row = 0; row < n * n; ++row) {
      const cplx v = c(row, a);
      if (v == cplx(0)) continue;
      const Index i = row / n, b = row % n;
      const cplx xi = coeffs(i);
      if (xi == cplx(0)) continue;
      op(a, b) += std::sqrt(primal_.weight_of(b) / primal_.weight_of(a)) * primal_.weight_of(i) * std::conj(v) * xi;
    }
  return op;
}

BlockOperator DualPair::lambda_map(const RowVectorXc& omega) const {
  const BlockOperator x = primal_.density_of(omega);
  return dual_.element(phi_ * x.coefficients());
}

const DualPair& DualPair::reverse() const {
  if (!reverse_) throw Error(ErrorCode::PreconditionFailed, "dual pair was built without its reverse");
  return *reverse_;
}

DualPair build_dual(const FiniteKacAlgebra& k, const DualOptions& options) {
  options.tol.validate();
  return DualPairBuilder::build(k, options);
}

SparseMatrixXc left_regular(const FiniteKacAlgebra& k, const BlockOperator& x) {
  k.check_element(x);
  const Index n = k.basis_size();
  const VectorXc c = x.coefficients();
  std::vector<Eigen::Triplet<cplx>> entries;
  for (Index i = 0; i < n; ++i) {
    if (c(i) == cplx(0)) continue;
    for (Index a = 0; a < n; ++a) {
      const Index m = k.unit_product(i, a);
      if (m >= 0) entries.emplace_back(m, a, c(i));
    }
  }
  SparseMatrixXc out(n, n);
  out.setFromTriplets(entries.begin(), entries.end());
  return out;
}

UnitaryReport verify_multiplicative_unitary(const DualPair& p) {
  const auto& k = p.primal();
  const Index n = k.basis_size();
  const SparseMatrixXc& w = p.W();
  const SparseMatrixXc w_star = w.adjoint();
  SparseMatrixXc id(n * n, n * n);
  id.setIdentity();

  UnitaryReport rep;
  rep.unitarity = std::max(max_abs_sparse(SparseMatrixXc(w_star * w - id)), max_abs_sparse(SparseMatrixXc(w * w_star - id)));

  SparseMatrixXc one(n, n);
  one.setIdentity();
  std::vector<SparseMatrixXc> pis;
  for (Index i = 0; i < n; ++i) pis.push_back(left_regular(k, k.basis_element(i)));
  for (Index kk = 0; kk < n; ++kk) {
    // 1 (x) pi(e_k)
    std::vector<Eigen::Triplet<cplx>> t1;
    for (Index col = 0; col < n; ++col)
      for (SparseMatrixXc::InnerIterator it(pis[kk], col); it; ++it)
        for (Index a = 0; a < n; ++a) t1.emplace_back(a * n + it.row(), a * n + col, it.value());
    SparseMatrixXc lifted(n * n, n * n);
    lifted.setFromTriplets(t1.begin(), t1.end());
    const SparseMatrixXc lhs = w_star * lifted * w;

    // (pi (x) pi)(Delta(e_k))
    std::vector<Eigen::Triplet<cplx>> t2;
    for (Index row = 0; row < n * n; ++row) {
      const cplx v = k.comul_matrix()(row, kk);
      if (v == cplx(0)) continue;
      const Index i = row / n, j = row % n;
      for (Index ca = 0; ca < n; ++ca)
        for (SparseMatrixXc::InnerIterator ia(pis[i], ca); ia; ++ia)
          for (Index cb = 0; cb < n; ++cb)
            for (SparseMatrixXc::InnerIterator ib(pis[j], cb); ib; ++ib)
              t2.emplace_back(ia.row() * n + ib.row(), ca * n + cb, v * ia.value() * ib.value());
    }
    SparseMatrixXc rhs(n * n, n * n);
    rhs.setFromTriplets(t2.begin(), t2.end());
    rep.implements_comultiplication = std::max(rep.implements_comultiplication, max_abs_sparse(SparseMatrixXc(lhs - rhs)));
  }

  const auto& d = p.dual();
  VectorXc tp(n), td(n);
  for (Index q = 0; q < n; ++q) {
    tp(q) = k.weight_of(q);
    td(q) = d.weight_of(q);
  }
  const MatrixXc& f = p.fourier_matrix();
  const MatrixXc gram = f.adjoint() * td.asDiagonal() * f;
  rep.plancherel = (gram - MatrixXc(tp.asDiagonal())).cwiseAbs().maxCoeff();
  return rep;
}

}  // namespace kac
