#include "sgc/jsonio.hpp"

#include <fstream>

namespace sgc {

namespace {

const nlohmann::json& field_of(const nlohmann::json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw Error(Errc::SchemaError, std::string("missing field \"") + name + "\"");
    return *it;
}

std::uint64_t uint_field(const nlohmann::json& j, const char* name) {
    const nlohmann::json& v = field_of(j, name);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        throw Error(Errc::SchemaError, std::string("field \"") + name + "\" must be a non-negative integer");
    return v.get<std::uint64_t>();
}

} // namespace

nlohmann::json matrix_to_json(const MatrixFp& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

MatrixFp matrix_from_json(const nlohmann::json& j, PrimeField field, std::size_t expect_rows,
                          std::size_t expect_cols, const std::string& what) {
    if (!j.is_array()) throw Error(Errc::SchemaError, what + " must be an array of rows");
    if (j.size() != expect_rows)
        throw Error(Errc::SchemaError, what + " has " + std::to_string(j.size()) + " rows, expected " +
                                           std::to_string(expect_rows));
    MatrixFp m(field, expect_rows, expect_cols);
    for (std::size_t i = 0; i < expect_rows; ++i) {
        const nlohmann::json& row = j[i];
        if (!row.is_array() || row.size() != expect_cols)
            throw Error(Errc::SchemaError,
                        what + " row " + std::to_string(i) + " must hold " + std::to_string(expect_cols) +
                            " integers");
        for (std::size_t c = 0; c < expect_cols; ++c) {
            const nlohmann::json& v = row[c];
            if (!v.is_number_unsigned() && !v.is_number_integer())
                throw Error(Errc::SchemaError, what + " entries must be integers");
            std::int64_t raw = v.get<std::int64_t>();
            if (raw < 0 || static_cast<std::uint64_t>(raw) >= field.p())
                throw Error(Errc::SchemaError, what + " entry " + std::to_string(raw) +
                                                   " is not a residue in [0, p)");
            m.at(i, c) = static_cast<std::uint64_t>(raw);
        }
    }
    return m;
}

nlohmann::json instance_to_json(const Instance& inst) {
    nlohmann::json keys = nlohmann::json::array();
    for (const MatrixFp& k : inst.keys) keys.push_back(matrix_to_json(k));
    return nlohmann::json{{"p", inst.field.p()},
                          {"m", inst.basis_dim},
                          {"N", inst.num_qualified},
                          {"keys", std::move(keys)}};
}

Instance instance_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw Error(Errc::SchemaError, "instance document must be an object");
    std::uint64_t p = uint_field(j, "p");
    std::size_t m = uint_field(j, "m");
    std::size_t n = uint_field(j, "N");
    PrimeField field(p);
    const nlohmann::json& keys_json = field_of(j, "keys");
    if (!keys_json.is_array()) throw Error(Errc::SchemaError, "field \"keys\" must be an array");
    std::vector<MatrixFp> keys;
    for (std::size_t k = 0; k < keys_json.size(); ++k) {
        const nlohmann::json& kj = keys_json[k];
        if (!kj.is_array()) throw Error(Errc::SchemaError, "key " + std::to_string(k + 1) + " must be an array");
        keys.push_back(matrix_from_json(kj, field, kj.size(), m, "key " + std::to_string(k + 1)));
    }
    try {
        return make_instance(p, m, n, std::move(keys));
    } catch (const Error& e) {
        if (e.code() == Errc::BadDimensions) throw Error(Errc::SchemaError, e.what());
        throw;
    }
}

nlohmann::json scheme_to_json(const LinearScheme& sch) {
    return nlohmann::json{{"p", sch.inst.field.p()},
                          {"L", sch.blocks},
                          {"L_W", sch.message_len},
                          {"L_X", sch.signal_len},
                          {"V_W", matrix_to_json(sch.msg_precoder)},
                          {"V", matrix_to_json(sch.key_precoder)},
                          {"provenance", sch.provenance}};
}

LinearScheme scheme_from_json(const nlohmann::json& j, Instance inst) {
    if (!j.is_object()) throw Error(Errc::SchemaError, "scheme document must be an object");
    std::uint64_t p = uint_field(j, "p");
    if (p != inst.field.p())
        throw Error(Errc::SchemaError, "scheme field p=" + std::to_string(p) +
                                           " does not match the instance (p=" +
                                           std::to_string(inst.field.p()) + ")");
    std::size_t blocks = uint_field(j, "L");
    std::size_t lw = uint_field(j, "L_W");
    std::size_t lx = uint_field(j, "L_X");
    MatrixFp msg = matrix_from_json(field_of(j, "V_W"), inst.field, lx, lw, "V_W");
    MatrixFp key = matrix_from_json(field_of(j, "V"), inst.field, lx, inst.basis_dim, "V");
    nlohmann::json prov = j.contains("provenance") ? j.at("provenance") : nlohmann::json::object();
    try {
        return make_scheme(std::move(inst), std::move(msg), std::move(key), std::move(prov), blocks);
    } catch (const Error& e) {
        if (e.code() == Errc::BadDimensions) throw Error(Errc::SchemaError, e.what());
        throw;
    }
}

void write_json_file(const nlohmann::json& j, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::ParseError, "cannot open '" + path + "' for writing");
    out << j.dump(2) << "\n";
    if (!out) throw Error(Errc::ParseError, "write to '" + path + "' failed");
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::ParseError, "cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::ParseError, std::string("invalid JSON in '") + path + "': " + e.what());
    }
}

Instance load_instance(const std::string& path) { return instance_from_json(read_json_file(path)); }

void save_instance(const Instance& inst, const std::string& path) {
    write_json_file(instance_to_json(inst), path);
}

LinearScheme load_scheme(const std::string& path, Instance inst) {
    return scheme_from_json(read_json_file(path), std::move(inst));
}

void save_scheme(const LinearScheme& sch, const std::string& path) {
    write_json_file(scheme_to_json(sch), path);
}

} // namespace sgc
