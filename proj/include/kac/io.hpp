#pragma once

#include <string>

#include <json.hpp>

#include "kac/kac_algebra.hpp"

namespace kac {

/// {"dims":[...], "blocks":[[[re,im],...],...]}, each block row-major.
nlohmann::json element_to_json(const BlockOperator& x);
BlockOperator element_from_json(const nlohmann::json& j);

/// {"order":n, "mul":[[...]], "identity":i}
nlohmann::json group_table_to_json(const GroupTable& t);
GroupTable group_table_from_json(const nlohmann::json& j, const std::string& name = {});

/// {"dims", "trace_weights", "comul":[[i,j,k,re,im],...], "antipode":[[i,j,re,im],...],
/// "counit":[[i,re,im],...]}; sparse entries, zeros omitted.
nlohmann::json algebra_to_json(const FiniteKacAlgebra& k);
FiniteKacAlgebra algebra_from_json(const nlohmann::json& j, const std::string& name = {});

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace kac
