#pragma once

#include <string>

#include "parsum/spectral.hpp"

namespace parsum {

// Matrix files are JSON objects {"n": n, "real": [[...]], "imag": [[...]]}
// with "imag" optional (absent means zero). Throws ParseError on malformed
// input, ValidationError when the matrix fails the Hermitian or PSD check;
// messages name the file and the violated check.
CMatrix read_matrix_file(const std::string& path);
PsdMatrix parse_matrix(const std::string& path, const ToleranceConfig& cfg);
PsdMatrix parse_matrix(const std::string& path);

void write_matrix_file(const std::string& path, const CMatrix& m);
std::string matrix_to_json_text(const CMatrix& m);

}  // namespace parsum
