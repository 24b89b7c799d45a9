#include "copmeas/matrix_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "copmeas/error.hpp"

namespace copmeas {

namespace {

Matrix read_matrix_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::vector<double> row;
        std::stringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) {
            try {
                std::size_t pos = 0;
                row.push_back(std::stod(field, &pos));
                while (pos < field.size() && std::isspace(static_cast<unsigned char>(field[pos])))
                    ++pos;
                if (pos != field.size()) throw std::invalid_argument(field);
            } catch (const std::exception&) {
                throw Error("ParseError", "line " + std::to_string(lineno) +
                                              ": bad numeric field '" + field + "'");
            }
        }
        if (row.empty()) {
            throw Error("ParseError", "line " + std::to_string(lineno) + ": empty row");
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw Error("ParseError", "line " + std::to_string(lineno) +
                                          ": expected " + std::to_string(rows.front().size()) +
                                          " fields, got " + std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error("ParseError", "no rows in matrix input");
    return Matrix::from_rows(rows);
}

Matrix read_matrix_json(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw Error("ParseError", std::string("bad JSON: ") + e.what());
    }
    if (!j.contains("m") || !j.contains("n") || !j.contains("entries")) {
        throw Error("ParseError", "JSON matrix needs keys m, n, entries");
    }
    const auto m = j["m"].get<std::size_t>();
    const auto n = j["n"].get<std::size_t>();
    const auto& e = j["entries"];
    if (!e.is_array() || e.size() != m) {
        throw Error("ParseError", "entries has " + std::to_string(e.size()) +
                                      " rows, header says m=" + std::to_string(m));
    }
    Matrix out(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        if (!e[i].is_array() || e[i].size() != n) {
            throw Error("ParseError", "entries row " + std::to_string(i + 1) +
                                          " does not have n=" + std::to_string(n) + " fields");
        }
        for (std::size_t k = 0; k < n; ++k) out(i, k) = e[i][k].get<double>();
    }
    return out;
}

}  // namespace

Matrix read_matrix(std::istream& in) {
    int c = in.peek();
    while (c != EOF && std::isspace(c)) {
        in.get();
        c = in.peek();
    }
    if (c == '{') return read_matrix_json(in);
    return read_matrix_csv(in);
}

Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("IoError", "cannot open '" + path + "'");
    return read_matrix(in);
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
    out.precision(17);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << m(i, j);
        }
        out << '\n';
    }
}

std::string matrix_to_json(const Matrix& m) {
    nlohmann::json j;
    j["m"] = m.rows();
    j["n"] = m.cols();
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = nlohmann::json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j.dump();
}

}  // namespace copmeas
