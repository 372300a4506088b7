#include "kac/io.hpp"

#include <fstream>

#include "kac/error.hpp"

namespace kac {

namespace {

using nlohmann::json;

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field ") + key);
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad field ") + key + ": " + e.what());
  }
}

cplx complex_at(const json& e, std::size_t re) {
  return {e.at(re).get<double>(), e.at(re + 1).get<double>()};
}

Index checked_index(const json& v, Index bound) {
  const auto i = v.get<long long>();
  if (i < 0 || i >= bound) throw Error(ErrorCode::ParseError, "index out of range");
  return static_cast<Index>(i);
}

}  // namespace

json element_to_json(const BlockOperator& x) {
  json blocks = json::array();
  for (const auto& b : x.blocks()) {
    json flat = json::array();
    for (Index r = 0; r < b.rows(); ++r)
      for (Index c = 0; c < b.cols(); ++c) flat.push_back({b(r, c).real(), b(r, c).imag()});
    blocks.push_back(std::move(flat));
  }
  return {{"dims", x.dims()}, {"blocks", std::move(blocks)}};
}

BlockOperator element_from_json(const json& j) {
  const auto dims = field<Dims>(j, "dims");
  const auto& blocks = j.at("blocks");
  if (!blocks.is_array() || blocks.size() != dims.size())
    throw Error(ErrorCode::ParseError, "blocks must list one entry per dimension");
  std::vector<MatrixXc> out;
  try {
    for (std::size_t i = 0; i < dims.size(); ++i) {
      const Index d = dims[i];
      if (d <= 0) throw Error(ErrorCode::ParseError, "block dimensions must be positive");
      if (blocks[i].size() != static_cast<std::size_t>(d * d)) throw Error(ErrorCode::ParseError, "block size mismatch");
      MatrixXc m(d, d);
      for (Index r = 0; r < d; ++r)
        for (Index c = 0; c < d; ++c) m(r, c) = complex_at(blocks[i][static_cast<std::size_t>(r * d + c)], 0);
      out.push_back(std::move(m));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return BlockOperator(std::move(out));
}

json group_table_to_json(const GroupTable& t) {
  return {{"order", t.order()}, {"mul", t.table()}, {"identity", t.identity()}};
}

GroupTable group_table_from_json(const json& j, const std::string& name) {
  const int order = field<int>(j, "order");
  auto mul = field<std::vector<std::vector<int>>>(j, "mul");
  if (static_cast<int>(mul.size()) != order) throw Error(ErrorCode::InvalidTable, "order does not match the table");
  return GroupTable(std::move(mul), field<int>(j, "identity"), name);
}

json algebra_to_json(const FiniteKacAlgebra& k) {
  const Index n = k.basis_size();
  json comul = json::array(), antipode = json::array(), counit = json::array();
  const MatrixXc& c = k.comul_matrix();
  for (Index col = 0; col < n; ++col)
    for (Index row = 0; row < n * n; ++row)
      if (c(row, col) != cplx(0)) comul.push_back({row / n, row % n, col, c(row, col).real(), c(row, col).imag()});
  const MatrixXc& r = k.antipode_matrix();
  for (Index col = 0; col < n; ++col)
    for (Index row = 0; row < n; ++row)
      if (r(row, col) != cplx(0)) antipode.push_back({row, col, r(row, col).real(), r(row, col).imag()});
  for (Index i = 0; i < n; ++i)
    if (k.counit_row()(i) != cplx(0)) counit.push_back({i, k.counit_row()(i).real(), k.counit_row()(i).imag()});
  return {{"dims", k.dims()},
          {"trace_weights", k.trace_weights()},
          {"comul", std::move(comul)},
          {"antipode", std::move(antipode)},
          {"counit", std::move(counit)}};
}

FiniteKacAlgebra algebra_from_json(const json& j, const std::string& name) {
  const auto dims = field<Dims>(j, "dims");
  for (Index d : dims)
    if (d <= 0) throw Error(ErrorCode::ParseError, "block dimensions must be positive");
  const auto weights = field<std::vector<double>>(j, "trace_weights");
  const Index n = basis_size(dims);
  MatrixXc comul = MatrixXc::Zero(n * n, n);
  MatrixXc antipode = MatrixXc::Zero(n, n);
  RowVectorXc counit = RowVectorXc::Zero(n);
  try {
    for (const auto& e : field<json>(j, "comul")) {
      if (e.size() != 5) throw Error(ErrorCode::ParseError, "comul entries are [i,j,k,re,im]");
      comul(checked_index(e[0], n) * n + checked_index(e[1], n), checked_index(e[2], n)) += complex_at(e, 3);
    }
    for (const auto& e : field<json>(j, "antipode")) {
      if (e.size() != 4) throw Error(ErrorCode::ParseError, "antipode entries are [i,j,re,im]");
      antipode(checked_index(e[0], n), checked_index(e[1], n)) += complex_at(e, 2);
    }
    for (const auto& e : field<json>(j, "counit")) {
      if (e.size() != 3) throw Error(ErrorCode::ParseError, "counit entries are [i,re,im]");
      counit(checked_index(e[0], n)) += complex_at(e, 1);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return FiniteKacAlgebra(dims, weights, std::move(comul), std::move(antipode), std::move(counit), name);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace kac
