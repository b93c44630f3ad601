#include "parsum/matrix_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace parsum {

namespace {

using nlohmann::json;

void fill_part(CMatrix& m, const json& rows, int n, bool imag, const std::string& path) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw ParseError(path + ": '" + (imag ? "imag" : "real") + "' must be an array of " +
                     std::to_string(n) + " rows");
  for (int i = 0; i < n; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError(path + ": row " + std::to_string(i) + " of '" +
                       (imag ? "imag" : "real") + "' must have " + std::to_string(n) +
                       " entries");
    for (int j = 0; j < n; ++j) {
      const json& v = row[static_cast<std::size_t>(j)];
      if (!v.is_number())
        throw ParseError(path + ": entry (" + std::to_string(i) + "," + std::to_string(j) +
                         ") is not a number");
      const double d = v.get<double>();
      if (imag)
        m(i, j) += cplx(0.0, d);
      else
        m(i, j) += cplx(d, 0.0);
    }
  }
}

}  // namespace

CMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": invalid JSON (" + e.what() + ")");
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("real"))
    throw ParseError(path + ": expected an object with 'n' and 'real'");
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1)
    throw ParseError(path + ": 'n' must be a positive integer");
  const int n = j["n"].get<int>();

  CMatrix m(n);
  fill_part(m, j["real"], n, false, path);
  if (j.contains("imag")) fill_part(m, j["imag"], n, true, path);
  return m;
}

PsdMatrix parse_matrix(const std::string& path, const ToleranceConfig& cfg) {
  const CMatrix m = read_matrix_file(path);
  try {
    return PsdMatrix(m, cfg);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

PsdMatrix parse_matrix(const std::string& path) {
  const CMatrix m = read_matrix_file(path);
  try {
    return PsdMatrix(m, ToleranceConfig::defaults(m.dim()));
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string matrix_to_json_text(const CMatrix& m) {
  const int n = m.dim();
  json j;
  j["n"] = n;
  json real = json::array();
  json imag = json::array();
  bool any_imag = false;
  for (int i = 0; i < n; ++i) {
    json rrow = json::array();
    json irow = json::array();
    for (int jj = 0; jj < n; ++jj) {
      rrow.push_back(m(i, jj).real());
      irow.push_back(m(i, jj).imag());
      if (m(i, jj).imag() != 0.0) any_imag = true;
    }
    real.push_back(std::move(rrow));
    imag.push_back(std::move(irow));
  }
  j["real"] = std::move(real);
  if (any_imag) j["imag"] = std::move(imag);
  return j.dump(2) + "\n";
}

void write_matrix_file(const std::string& path, const CMatrix& m) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << matrix_to_json_text(m);
  if (!out) throw ParseError(path + ": write failed");
}

}  // namespace parsum
