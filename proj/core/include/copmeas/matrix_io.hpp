#pragma once

#include <iosfwd>
#include <string>

#include "copmeas/matrix.hpp"

namespace copmeas {

/// Reads a mass matrix from CSV (m lines of n comma-separated decimals, no
/// header) or from JSON {"m":..., "n":..., "entries":[[...]]}. The format is
/// sniffed from the first non-space character ('{' means JSON).
Matrix read_matrix(std::istream& in);
Matrix read_matrix_file(const std::string& path);

void write_matrix_csv(std::ostream& out, const Matrix& m);
std::string matrix_to_json(const Matrix& m);

}  // namespace copmeas
