#pragma once

#include <string>

#include <json.hpp>

#include "sgc/scheme.hpp"

namespace sgc {

// Instance files: {"p", "m", "N", "keys": [d_k x m integer matrices]}.
// Scheme files: {"p", "L", "L_W", "L_X", "V_W", "V", "provenance"}.
// All entries are residues in [0, p); writes are canonical (sorted keys,
// two-space indent, trailing newline) so save(load(x)) is byte identical.

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

nlohmann::json scheme_to_json(const LinearScheme& sch);
// The scheme file carries no key matrices; the caller supplies the instance
// it was built against (field and basis width are cross-checked).
LinearScheme scheme_from_json(const nlohmann::json& j, Instance inst);
LinearScheme load_scheme(const std::string& path, Instance inst);
void save_scheme(const LinearScheme& sch, const std::string& path);

nlohmann::json matrix_to_json(const MatrixFp& m);
MatrixFp matrix_from_json(const nlohmann::json& j, PrimeField field, std::size_t expect_rows,
                          std::size_t expect_cols, const std::string& what);

void write_json_file(const nlohmann::json& j, const std::string& path);
nlohmann::json read_json_file(const std::string& path);

} // namespace sgc
