#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <utility>

#include <json.hpp>

#include "idsym/errors.hpp"
#include "idsym/linalg.hpp"

namespace idsym {

/// On-disk matrix: a JSON object with "rows", "cols" and a row-major "data"
/// array of [re, im] pairs, plus an optional "name".
struct MatrixFile {
    std::string name;
    ComplexMatrix matrix;
};

inline nlohmann::json matrix_to_json(const ComplexMatrix& m, std::string_view name = {}) {
    if (!all_finite(m)) throw SchemaError("matrix_to_json: non-finite entry");
    nlohmann::json data = nlohmann::json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Index j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        data.push_back(std::move(row));
    }
    nlohmann::json out{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
    if (!name.empty()) out["name"] = name;
    return out;
}

inline MatrixFile matrix_file_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw SchemaError("top level: expected an object");
    for (const char* key : {"rows", "cols", "data"})
        if (!j.contains(key)) throw SchemaError(std::string(key) + ": missing field");

    const auto read_count = [&](const char* key) -> Index {
        const auto& v = j.at(key);
        if (!v.is_number_integer() || v.get<long long>() < 0)
            throw SchemaError(std::string(key) + ": expected a nonnegative integer");
        return static_cast<Index>(v.get<long long>());
    };
    const Index rows = read_count("rows"), cols = read_count("cols");

    MatrixFile out;
    if (j.contains("name")) {
        if (!j.at("name").is_string()) throw SchemaError("name: expected a string");
        out.name = j.at("name").get<std::string>();
    }

    const auto& data = j.at("data");
    if (!data.is_array() || static_cast<Index>(data.size()) != rows)
        throw SchemaError("data: expected an array of " + std::to_string(rows) + " rows");
    out.matrix.resize(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        const auto& row = data.at(i);
        const std::string rp = "data[" + std::to_string(i) + "]";
        if (!row.is_array() || static_cast<Index>(row.size()) != cols)
            throw SchemaError(rp + ": expected an array of " + std::to_string(cols) + " entries");
        for (Index k = 0; k < cols; ++k) {
            const auto& cell = row.at(k);
            const std::string cp = rp + "[" + std::to_string(k) + "]";
            if (!cell.is_array() || cell.size() != 2)
                throw SchemaError(cp + ": expected a [re, im] pair");
            double part[2];
            for (int c = 0; c < 2; ++c) {
                if (!cell.at(c).is_number())
                    throw SchemaError(cp + "[" + std::to_string(c) + "]: expected a number");
                part[c] = cell.at(c).get<double>();
                if (!std::isfinite(part[c]))
                    throw SchemaError(cp + "[" + std::to_string(c) + "]: not a finite number");
            }
            out.matrix(i, k) = Complex(part[0], part[1]);
        }
    }
    return out;
}

inline MatrixFile read_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(path.string() + ": cannot open file");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(path.string() + ": invalid JSON (" + e.what() + ")");
    }
    try {
        return matrix_file_from_json(j);
    } catch (const SchemaError& e) {
        throw SchemaError(path.string() + ": " + e.what());
    }
}

inline void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m,
                              std::string_view name = {}) {
    std::ofstream out(path);
    if (!out) throw SchemaError(path.string() + ": cannot open file for writing");
    out << matrix_to_json(m, name).dump(2) << "\n";
    if (!out) throw SchemaError(path.string() + ": write failed");
}

}  // namespace idsym
