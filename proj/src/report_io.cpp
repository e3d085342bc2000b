#include "fredholm/report_io.hpp"

namespace fredholm {

using nlohmann::json;

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json vector_to_json(const CVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

json matrix_to_json(const CMatrix& mat) {
  json out = json::array();
  for (Index i = 0; i < mat.rows(); ++i) out.push_back(vector_to_json(mat.row(i).transpose()));
  return out;
}

json report_to_json(const FredholmReport& report) {
  return json{
      {"m", report.m},
      {"r", report.r},
      {"rank", report.rank},
      {"dim_kernel", report.dim_kernel},
      {"dim_cokernel", report.dim_cokernel},
      {"index", report.index},
      {"invertible", report.invertible},
      {"rank_uncertain", report.rank_uncertain},
      {"rank_tolerance", report.rank_tolerance},
      {"singular_values", report.singular_values},
  };
}

json analysis_to_json(const CharacteristicMatrix& M, const FredholmReport& report) {
  return json{{"characteristic_matrix", matrix_to_json(M.entries)},
              {"report", report_to_json(report)}};
}

json solution_to_json(const BvpSolution& solution, bool include_samples) {
  json out{
      {"status", std::string(to_string(solution.status))},
      {"reduced_residual", solution.reduced_residual},
      {"consistency_threshold", solution.consistency_threshold},
      {"report", report_to_json(solution.report)},
      {"characteristic_matrix", matrix_to_json(solution.characteristic.entries)},
  };
  if (solution.q_particular) {
    out["q_particular"] = vector_to_json(*solution.q_particular);
    json basis = json::array();
    for (const auto& v : solution.kernel_basis) basis.push_back(vector_to_json(v));
    out["kernel_basis"] = basis;
    out["ode_residual"] = solution.ode_residual;
    out["boundary_residual"] = solution.boundary_residual;
    if (include_samples) {
      out["grid"] = solution.fundamental.grid();
      json samples = json::array();
      for (const auto& v : solution.samples) samples.push_back(vector_to_json(v));
      out["samples"] = samples;
    }
  }
  return out;
}

json oracle_to_json(const OracleReport& report) {
  json details = json::array();
  for (const auto& c : report.details) details.push_back({{"case", c.label}, {"error", c.error}});
  return json{{"oracle_name", report.oracle_name},
              {"tolerance", report.tolerance},
              {"max_abs_error", report.max_abs_error},
              {"pass", report.pass},
              {"details", details}};
}

json norms_to_json(const NormBreakdown& norms) {
  return json{{"integer_part_norm", norms.integer_part_norm},
              {"seminorm", norms.seminorm},
              {"total", norms.total},
              {"grid_size", norms.grid_size}};
}

}  // namespace fredholm
