// JSON file format for interval matrices:
//
//   { "inf": [[...], ...], "sup": [[...], ...] }
//
// Bounds are numbers or strings; strings go through strtod and so accept
// hexadecimal floats ("0x1.9p+3"), which round-trip exactly.  The writer
// always emits hexadecimal-float strings.

#pragma once

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "intdet/interval_matrix.hpp"

namespace intdet {

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline double parse_bound(const nlohmann::json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const char* c = s.c_str();
    char* end = nullptr;
    errno = 0;
    const double x = std::strtod(c, &end);
    if (end == c || *end != '\0' || errno == ERANGE)
      throw io_error(where + ": cannot parse '" + s + "' as a number");
    return x;
  }
  throw io_error(where + ": expected a number or a numeric string");
}

inline real_matrix parse_bound_matrix(const nlohmann::json& rows,
                                      const std::string& key) {
  if (!rows.is_array() || rows.empty())
    throw io_error("'" + key + "' must be a non-empty array of rows");
  const std::size_t n = rows.size();
  real_matrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const nlohmann::json& row = rows[i];
    if (!row.is_array() || row.size() != n)
      throw io_error("'" + key + "' row " + std::to_string(i) +
                     " does not have " + std::to_string(n) + " entries");
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = parse_bound(row[j], "'" + key + "'[" + std::to_string(i) + "][" +
                                        std::to_string(j) + "]");
  }
  return m;
}

inline std::string hex_float(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

}  // namespace detail

inline interval_matrix read_matrix_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw io_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("inf") || !j.contains("sup"))
    throw io_error("expected an object with 'inf' and 'sup' matrices");
  const real_matrix lo = detail::parse_bound_matrix(j["inf"], "inf");
  const real_matrix hi = detail::parse_bound_matrix(j["sup"], "sup");
  if (lo.n() != hi.n()) throw io_error("'inf' and 'sup' have different sizes");
  try {
    return interval_matrix::from_bounds(lo, hi);
  } catch (const std::invalid_argument& e) {
    throw io_error(std::string("invalid interval matrix: ") + e.what());
  }
}

inline interval_matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  return read_matrix_json(in);
}

inline void write_matrix_json(std::ostream& out, const interval_matrix& A) {
  nlohmann::json inf = nlohmann::json::array();
  nlohmann::json sup = nlohmann::json::array();
  for (std::size_t i = 0; i < A.n(); ++i) {
    nlohmann::json ri = nlohmann::json::array();
    nlohmann::json rs = nlohmann::json::array();
    for (std::size_t j = 0; j < A.n(); ++j) {
      ri.push_back(detail::hex_float(A(i, j).lo()));
      rs.push_back(detail::hex_float(A(i, j).hi()));
    }
    inf.push_back(std::move(ri));
    sup.push_back(std::move(rs));
  }
  nlohmann::json j;
  j["inf"] = std::move(inf);
  j["sup"] = std::move(sup);
  out << j.dump(2) << '\n';
}

inline void write_matrix_file(const std::string& path, const interval_matrix& A) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  write_matrix_json(out, A);
}

}  // namespace intdet
