#pragma once

#include <json.hpp>

#include "fredholm/bvp_solver.hpp"
#include "fredholm/characteristic.hpp"
#include "fredholm/oracles.hpp"
#include "fredholm/sobolev.hpp"

namespace fredholm {

// Complex numbers encode as [re, im]; matrices row-major as nested lists.
nlohmann::json complex_to_json(Complex z);
nlohmann::json vector_to_json(const CVector& v);
nlohmann::json matrix_to_json(const CMatrix& mat);

nlohmann::json report_to_json(const FredholmReport& report);
/// {"characteristic_matrix": ..., "report": ...}
nlohmann::json analysis_to_json(const CharacteristicMatrix& M, const FredholmReport& report);
nlohmann::json solution_to_json(const BvpSolution& solution, bool include_samples);
nlohmann::json oracle_to_json(const OracleReport& report);
nlohmann::json norms_to_json(const NormBreakdown& norms);

}  // namespace fredholm
