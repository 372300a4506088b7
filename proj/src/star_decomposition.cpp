#include "kac/star_decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "kac/error.hpp"

namespace kac {

namespace {

using RealVector = Eigen::VectorXd;

// Groups sorted eigenvalues into runs whose consecutive gaps are below tol.
std::vector<std::vector<Index>> cluster(const RealVector& ev, double tol) {
  std::vector<std::vector<Index>> runs;
  for (Index i = 0; i < ev.size(); ++i) {
    if (runs.empty() || ev(i) - ev(runs.back().back()) > tol) runs.emplace_back();
    runs.back().push_back(i);
  }
  return runs;
}

MatrixXc gather_columns(const MatrixXc& u, const std::vector<Index>& cols) {
  MatrixXc out(u.rows(), static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Index>(j)) = u.col(cols[j]);
  return out;
}

Index numeric_rank(const MatrixXc& m, double rel) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<MatrixXc> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0) return 0;
  Index r = 0;
  while (r < s.size() && s(r) > rel * s(0)) ++r;
  return r;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) { return parent[i] == i ? i : parent[i] = find(parent[i]); }
  void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Basis of the commutant, expressed in the eigenbasis of a random
// self-adjoint element h of A: every commutant element commutes with h and is
// therefore block diagonal over the eigenspaces of h.
std::vector<MatrixXc> commutant(const std::vector<MatrixXc>& gens, const std::vector<std::vector<Index>>& runs) {
  const Index d = gens.front().rows();
  std::vector<std::pair<Index, Index>> unknowns;
  for (const auto& r : runs)
    for (Index p : r)
      for (Index q : r) unknowns.emplace_back(p, q);
  const Index u = static_cast<Index>(unknowns.size());

  MatrixXc gram = MatrixXc::Zero(u, u);
  MatrixXc m(d * d, u);
  double scale = 0;
  for (const auto& a : gens) {
    scale = std::max(scale, a.cwiseAbs2().sum());
    m.setZero();
    for (Index t = 0; t < u; ++t) {
      const auto [p, q] = unknowns[static_cast<std::size_t>(t)];
      // a E_pq - E_pq a, vectorized column-major
      for (Index r = 0; r < d; ++r) m(q * d + r, t) += a(r, p);
      for (Index c = 0; c < d; ++c) m(c * d + p, t) -= a(q, c);
    }
    gram.noalias() += m.adjoint() * m;
  }

  Eigen::SelfAdjointEigenSolver<MatrixXc> es(gram);
  const double cut = 1e-9 * std::max(1.0, scale);
  std::vector<MatrixXc> basis;
  for (Index k = 0; k < u; ++k) {
    if (es.eigenvalues()(k) > cut) break;
    MatrixXc c = MatrixXc::Zero(d, d);
    for (Index t = 0; t < u; ++t) {
      const auto [p, q] = unknowns[static_cast<std::size_t>(t)];
      c(p, q) = es.eigenvectors()(t, k);
    }
    basis.push_back(std::move(c));
  }
  return basis;
}

}  // namespace

BlockOperator StarDecomposition::compress(const MatrixXc& a) const {
  std::vector<MatrixXc> blocks;
  blocks.reserve(isometries.size());
  for (const auto& v : isometries) blocks.push_back(v.adjoint() * a * v);
  return BlockOperator(std::move(blocks));
}

StarDecomposition decompose_star_algebra(const std::vector<MatrixXc>& span, std::uint64_t seed) {
  if (span.empty()) throw Error(ErrorCode::InvalidShape, "empty spanning set");
  const Index d = span.front().rows();
  for (const auto& a : span)
    if (a.rows() != d || a.cols() != d) throw Error(ErrorCode::InvalidShape, "spanning matrices must share one size");

  MatrixXc stacked(d * d, static_cast<Index>(span.size()));
  for (std::size_t k = 0; k < span.size(); ++k) stacked.col(static_cast<Index>(k)) = span[k].reshaped();
  const Index algebra_dim = numeric_rank(stacked, 1e-10);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0, 1);

  for (int attempt = 0; attempt < 8; ++attempt) {
    // complex weights so the Hermitian part sees imaginary directions too
    auto weight = [&] { return cplx(normal(rng), normal(rng)); };
    MatrixXc h = MatrixXc::Zero(d, d);
    for (const auto& a : span) h += weight() * a;
    h = (h + h.adjoint()).eval() / 2.0;
    Eigen::SelfAdjointEigenSolver<MatrixXc> hs(h);
    const MatrixXc& u = hs.eigenvectors();
    const double hscale = std::max(1.0, hs.eigenvalues().cwiseAbs().maxCoeff());

    std::vector<MatrixXc> gens;
    gens.reserve(span.size());
    for (const auto& a : span) gens.push_back(u.adjoint() * a * u);
    const auto comm = commutant(gens, cluster(hs.eigenvalues(), 1e-8 * hscale));

    MatrixXc c = MatrixXc::Zero(d, d);
    for (const auto& b : comm) c += weight() * b;
    c = (c + c.adjoint()).eval() / 2.0;
    Eigen::SelfAdjointEigenSolver<MatrixXc> cs(c);
    const double cscale = std::max(1e-300, cs.eigenvalues().cwiseAbs().maxCoeff());
    const auto runs = cluster(cs.eigenvalues(), 1e-7 * cscale);

    std::vector<MatrixXc> spaces;
    bool irreducible = true;
    for (const auto& r : runs) {
      MatrixXc v = gather_columns(cs.eigenvectors(), r);
      const Index k = v.cols();
      MatrixXc comp(k * k, static_cast<Index>(gens.size()));
      for (std::size_t j = 0; j < gens.size(); ++j)
        comp.col(static_cast<Index>(j)) = (v.adjoint() * gens[j] * v).reshaped();
      if (numeric_rank(comp, 1e-8) != k * k) {
        irreducible = false;
        break;
      }
      spaces.push_back(std::move(v));
    }
    if (!irreducible) continue;

    UnionFind uf(spaces.size());
    for (std::size_t i = 0; i < spaces.size(); ++i)
      for (std::size_t j = i + 1; j < spaces.size(); ++j) {
        if (spaces[i].cols() != spaces[j].cols() || uf.find(i) == uf.find(j)) continue;
        for (const auto& b : comm)
          if ((spaces[j].adjoint() * b * spaces[i]).norm() > 1e-6) {
            uf.join(i, j);
            break;
          }
      }

    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < spaces.size(); ++i)
      if (uf.find(i) == i) reps.push_back(i);
    Index total = 0;
    for (std::size_t i : reps) total += spaces[i].cols() * spaces[i].cols();
    if (total != algebra_dim) continue;

    // deterministic order: by dimension, then by normalized traces of the
    // spanning elements (descending), so the trivial summand of a group comes first
    auto key = [&](std::size_t i) {
      std::vector<double> k;
      const auto& v = spaces[i];
      for (const auto& g : gens) {
        const cplx tr = (v.adjoint() * g * v).trace() / static_cast<double>(v.cols());
        k.push_back(-std::round(tr.real() * 1e6));
        k.push_back(-std::round(tr.imag() * 1e6));
      }
      return k;
    };
    std::stable_sort(reps.begin(), reps.end(), [&](std::size_t a, std::size_t b) {
      if (spaces[a].cols() != spaces[b].cols()) return spaces[a].cols() < spaces[b].cols();
      return key(a) < key(b);
    });

    StarDecomposition out;
    for (std::size_t i : reps) {
      out.dims.push_back(spaces[i].cols());
      out.isometries.push_back(u * spaces[i]);
    }
    return out;
  }
  throw Error(ErrorCode::BlockDecompositionFailure, "could not split the algebra into irreducible summands");
}

}  // namespace kac
