#include "hardy/report_json.hpp"

#include <cstdio>
#include <ostream>

#include "hardy/symbol_json.hpp"

namespace hardy {

using nlohmann::json;

namespace {

json ladder_to_json(const std::vector<LadderEntry>& ladder) {
  json j = {{"N", json::array()}, {"cross_check_angle", json::array()}, {"kernel_dim", json::array()},
            {"expected_dim", json::array()}};
  for (const auto& e : ladder) {
    j["N"].push_back(e.n);
    j["cross_check_angle"].push_back(e.cross_check_angle);
    j["kernel_dim"].push_back(e.kernel_dim);
    j["expected_dim"].push_back(e.expected_dim);
  }
  return j;
}

json cmatrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

json rigidity_to_json(const RigidityReport& r) {
  json j = {{"verdict", to_string(r.verdict)}, {"N", r.ladder}, {"sigma_min", r.sigma_min}, {"gap", r.gap}};
  if (r.witness) {
    j["witness"] = symbol_to_json(r.witness->as_symbol());
    j["witness_residual"] = r.witness_residual;
  }
  return j;
}

json classification_to_json(const ClassificationReport& r) {
  json j;
  j["divisibility"] = {{"verdict", to_string(r.divisibility)}, {"defect", r.divisibility_defect}};
  j["special"] = {{"verdict", to_string(r.special)},
                  {"mass_gap", r.mass_gap},
                  {"drift", r.mass_gap_drift},
                  {"alternative_mass_gap", r.alternative_mass_gap}};
  j["rigidity"] = rigidity_to_json(r.rigidity);
  j["final"] = to_string(r.final);
  j["reason"] = r.reason;
  j["symbol_ref"] = r.symbol_ref;
  j["cross_check_angle"] = r.cross_check_angle;
  j["ladder"] = ladder_to_json(r.ladder);
  if (r.phi) j["symbol_sup_norm"] = r.phi->sup_norm;
  return j;
}

json construction_to_json(const Construction& c) {
  json j;
  j["normalization"] = cmatrix_to_json(c.normalization);
  j["rigidity"] = rigidity_to_json(c.rigidity);
  j["special"] = {{"verdict", to_string(c.special.verdict)}, {"mass_gap", c.special.mass_gap}};
  j["dim_F"] = c.f.size();
  j["ladder"] = ladder_to_json(c.checks);
  j["symbol_sup_norm"] = c.phi.sup_norm;
  return j;
}

json embedding_to_json(const Embedding& e) {
  json j;
  j["rank"] = e.outer.rank;
  j["theta"] = cmatrix_to_json(e.theta);
  j["reduced"] = classification_to_json(e.reduced);
  j["kernel_dim"] = e.kernel.size();
  j["cross_check_angle"] = e.cross_check_angle;
  return j;
}

json basis_to_json(const SubspaceBasis& b) {
  json j = {{"dim", b.dim()}, {"degree", b.degree()}, {"elements", json::array()}};
  for (const auto& e : b.elements()) j["elements"].push_back(symbol_to_json(e.as_symbol()));
  return j;
}

void write_csv(std::ostream& os, const std::vector<ResidualRow>& rows) {
  os << "fixture,N,residual,tolerance,pass\n";
  char buf[64];
  for (const auto& r : rows) {
    os << r.fixture << ',' << r.n << ',';
    std::snprintf(buf, sizeof buf, "%.6e", r.residual);
    os << buf << ',';
    std::snprintf(buf, sizeof buf, "%.1e", r.tolerance);
    os << buf << ',' << (r.pass ? "true" : "false") << '\n';
  }
}

}  // namespace hardy
