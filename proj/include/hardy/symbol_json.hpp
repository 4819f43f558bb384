#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "hardy/sampling.hpp"
#include "hardy/symbol.hpp"

namespace hardy {

/// {"rows","cols","min_deg","max_deg","coeffs"}; coeffs lists one row-major
/// matrix of [re, im] pairs per degree from min_deg to max_deg.
nlohmann::json symbol_to_json(const MatrixSymbol& a);

/// Throws PreconditionError on malformed documents (missing keys, wrong
/// counts, non-numeric entries).
MatrixSymbol symbol_from_json(const nlohmann::json& j);

MatrixSymbol read_symbol_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

/// Samples as {"rows","cols","grid_size","values":[...]} (row-major per sample).
nlohmann::json samples_to_json(const SampledSymbol& s);

}  // namespace hardy
