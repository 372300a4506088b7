#include "kac/builders.hpp"

#include <cmath>

#include "kac/error.hpp"
#include "kac/group_tables_data.hpp"
#include "kac/io.hpp"
#include "kac/star_decomposition.hpp"

namespace kac {

FiniteKacAlgebra function_algebra(const GroupTable& t) {
  const Index n = t.order();
  MatrixXc comul = MatrixXc::Zero(n * n, n);
  MatrixXc antipode = MatrixXc::Zero(n, n);
  RowVectorXc counit = RowVectorXc::Zero(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) comul(a * n + b, t.mul(a, b)) = 1;
  for (int g = 0; g < n; ++g) antipode(t.inverse(g), g) = 1;
  counit(t.identity()) = 1;

  GroupRealization group{t, RealizationKind::PointMasses, {}};
  const Dims dims(static_cast<std::size_t>(n), 1);
  for (int g = 0; g < n; ++g) group.elements.push_back(BlockOperator::Unit(dims, g));
  return FiniteKacAlgebra(dims, std::vector<double>(static_cast<std::size_t>(n), 1.0), std::move(comul),
                          std::move(antipode), std::move(counit), "F(" + t.name() + ")", std::move(group));
}

FiniteKacAlgebra group_algebra(const GroupTable& t) {
  const Index n = t.order();
  std::vector<MatrixXc> regular;
  for (int g = 0; g < n; ++g) {
    MatrixXc l = MatrixXc::Zero(n, n);
    for (int h = 0; h < n; ++h) l(t.mul(g, h), h) = 1;
    regular.push_back(std::move(l));
  }
  const auto dec = decompose_star_algebra(regular);

  GroupRealization group{t, RealizationKind::GroupUnitaries, {}};
  MatrixXc lam(n, n);  // column g: coefficients of lambda_g
  for (int g = 0; g < n; ++g) {
    group.elements.push_back(dec.compress(regular[g]));
    lam.col(g) = group.elements.back().coefficients();
  }
  if (basis_size(dec.dims) != n) throw Error(ErrorCode::BlockDecompositionFailure, "regular representation split badly");
  const MatrixXc lam_inv = lam.inverse();

  MatrixXc comul = MatrixXc::Zero(n * n, n);
  for (int g = 0; g < n; ++g) {
    const MatrixXc outer = lam.col(g) * lam.col(g).transpose();
    const VectorXc pair = outer.reshaped<Eigen::RowMajor>();
    comul += pair * lam_inv.row(g);
  }
  MatrixXc inv = MatrixXc::Zero(n, n);
  for (int g = 0; g < n; ++g) inv(t.inverse(g), g) = 1;
  MatrixXc antipode = lam * inv * lam_inv;
  RowVectorXc counit = RowVectorXc::Ones(n) * lam_inv;

  std::vector<double> weights;
  for (Index d : dec.dims) weights.push_back(static_cast<double>(d) / static_cast<double>(n));

  // exact zeros keep the sparse axiom checks cheap
  auto clean = [](MatrixXc& m) {
    for (Index i = 0; i < m.size(); ++i)
      if (std::abs(m.data()[i]) < 1e-13) m.data()[i] = 0;
  };
  clean(comul);
  clean(antipode);
  return FiniteKacAlgebra(dec.dims, std::move(weights), std::move(comul), std::move(antipode), std::move(counit),
                          "C[" + t.name() + "]", std::move(group));
}

GroupTable builtin_group(const std::string& name) {
  for (const auto& [key, text] : builtin_group_tables())
    if (key == name) return group_table_from_json(nlohmann::json::parse(text), name);
  throw Error(ErrorCode::ParseError, "unknown builtin group " + name);
}

namespace {

const GroupRealization& realization(const FiniteKacAlgebra& k) {
  if (!k.group()) throw Error(ErrorCode::KindMismatch, "algebra " + k.name() + " has no group realization");
  return *k.group();
}

void check_element_index(const GroupRealization& g, int e) {
  if (e < 0 || e >= g.table.order()) throw Error(ErrorCode::KindMismatch, "group element out of range");
}

}  // namespace

BlockOperator point_mass(const FiniteKacAlgebra& k, int g) {
  const auto& r = realization(k);
  check_element_index(r, g);
  return r.elements[static_cast<std::size_t>(g)];
}

BlockOperator indicator(const FiniteKacAlgebra& k, const std::vector<int>& subset) {
  const auto& r = realization(k);
  BlockOperator x = BlockOperator::Zero(k.dims());
  for (int g : subset) {
    check_element_index(r, g);
    x = x + r.elements[static_cast<std::size_t>(g)];
  }
  return x;
}

BlockOperator coset_indicator(const FiniteKacAlgebra& k, const std::vector<int>& subgroup, int g, bool left) {
  const auto& r = realization(k);
  check_element_index(r, g);
  std::vector<int> coset;
  for (int h : subgroup) {
    check_element_index(r, h);
    coset.push_back(left ? r.table.mul(g, h) : r.table.mul(h, g));
  }
  return indicator(k, coset);
}

BlockOperator character_twist(const FiniteKacAlgebra& k, const std::vector<std::complex<double>>& chi,
                              const std::vector<int>& subset) {
  const auto& r = realization(k);
  if (static_cast<int>(chi.size()) != r.table.order())
    throw Error(ErrorCode::KindMismatch, "character table length does not match the group order");
  BlockOperator x = BlockOperator::Zero(k.dims());
  for (int g : subset) {
    check_element_index(r, g);
    x = x + chi[static_cast<std::size_t>(g)] * r.elements[static_cast<std::size_t>(g)];
  }
  return x;
}

BlockOperator uniform(const FiniteKacAlgebra& k) {
  for (Index d : k.dims())
    if (d != 1) throw Error(ErrorCode::KindMismatch, "uniform element needs a commutative (1x1 block) algebra");
  return k.unit() / cplx(std::sqrt(static_cast<double>(k.basis_size())));
}

}  // namespace kac
