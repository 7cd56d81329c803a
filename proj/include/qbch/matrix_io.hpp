// JSON form of matrices: {"dim": n, "entries": [row-major values]}.

#ifndef QBCH_MATRIX_IO_HPP
#define QBCH_MATRIX_IO_HPP

#include "qbch/matrix.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbch {

inline nlohmann::json matrix_to_json(const DenseMatrix& m) {
    return nlohmann::json{{"dim", m.dim()}, {"entries", m.entries()}};
}

/// Accepts a flat row-major `entries` array or an array of rows.
inline DenseMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
        throw std::invalid_argument("matrix JSON needs fields 'dim' and 'entries'");
    const int dim = j.at("dim").get<int>();
    const auto& e = j.at("entries");
    if (!e.is_array()) throw std::invalid_argument("matrix JSON: 'entries' must be an array");
    std::vector<double> flat;
    for (const auto& v : e) {
        if (v.is_array()) {
            for (const auto& w : v) flat.push_back(w.get<double>());
        } else {
            flat.push_back(v.get<double>());
        }
    }
    return DenseMatrix(dim, std::move(flat));
}

inline DenseMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw std::invalid_argument("matrix file '" + path + "': " + ex.what());
    }
    return matrix_from_json(j);
}

}  // namespace qbch

#endif  // QBCH_MATRIX_IO_HPP
