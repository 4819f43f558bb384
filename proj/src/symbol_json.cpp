#include "hardy/symbol_json.hpp"

#include <fstream>

namespace hardy {

using nlohmann::json;

namespace {

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) rows.push_back({m(i, j).real(), m(i, j).imag()});
  return rows;
}

}  // namespace

json symbol_to_json(const MatrixSymbol& a) {
  json coeffs = json::array();
  for (int k = a.min_deg(); k <= a.max_deg(); ++k) coeffs.push_back(matrix_to_json(a.at(k)));
  return {{"rows", a.rows()}, {"cols", a.cols()}, {"min_deg", a.min_deg()},
          {"max_deg", a.max_deg()}, {"coeffs", coeffs}};
}

MatrixSymbol symbol_from_json(const json& j) {
  try {
    const auto rows = j.at("rows").get<Index>();
    const auto cols = j.at("cols").get<Index>();
    const int lo = j.at("min_deg").get<int>();
    const int hi = j.at("max_deg").get<int>();
    if (rows <= 0 || cols <= 0 || hi < lo) throw PreconditionError("symbol json: bad shape or degree range");
    const auto& coeffs = j.at("coeffs");
    if (!coeffs.is_array() || coeffs.size() != static_cast<size_t>(hi - lo + 1))
      throw PreconditionError("symbol json: coeffs count does not match degree range");
    MatrixSymbol a(rows, cols, lo, hi);
    for (int k = lo; k <= hi; ++k) {
      const auto& m = coeffs.at(static_cast<size_t>(k - lo));
      if (!m.is_array() || m.size() != static_cast<size_t>(rows * cols))
        throw PreconditionError("symbol json: coefficient matrix has wrong size");
      for (Index e = 0; e < rows * cols; ++e) {
        const auto& z = m.at(static_cast<size_t>(e));
        double re = 0.0, im = 0.0;
        if (z.is_number()) {
          re = z.get<double>();
        } else if (z.is_array() && z.size() == 2) {
          re = z.at(0).get<double>();
          im = z.at(1).get<double>();
        } else {
          throw PreconditionError("symbol json: entry must be a number or [re, im]");
        }
        a.at(k)(e / cols, e % cols) = cplx(re, im);
      }
    }
    return a;
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("symbol json: ") + e.what());
  }
}

MatrixSymbol read_symbol_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw PreconditionError(path + ": " + e.what());
  }
  return symbol_from_json(j);
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

json samples_to_json(const SampledSymbol& s) {
  json values = json::array();
  for (const auto& v : s.values) values.push_back(matrix_to_json(v));
  return {{"rows", s.rows}, {"cols", s.cols}, {"grid_size", s.grid_size()}, {"values", values}};
}

}  // namespace hardy
