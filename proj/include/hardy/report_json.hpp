#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hardy/hayashi.hpp"
#include "hardy/toeplitz.hpp"

namespace hardy {

nlohmann::json rigidity_to_json(const RigidityReport& r);
nlohmann::json classification_to_json(const ClassificationReport& r);
nlohmann::json construction_to_json(const Construction& c);
nlohmann::json embedding_to_json(const Embedding& e);
nlohmann::json basis_to_json(const SubspaceBasis& b);

/// One line of a verification table.
struct ResidualRow {
  std::string fixture;
  int n = 0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Header "fixture,N,residual,tolerance,pass", residuals in %.6e.
void write_csv(std::ostream& os, const std::vector<ResidualRow>& rows);

}  // namespace hardy
