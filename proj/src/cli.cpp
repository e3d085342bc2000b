#include "fredholm/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fredholm/bvp_solver.hpp"
#include "fredholm/error.hpp"
#include "fredholm/oracles.hpp"
#include "fredholm/report_io.hpp"
#include "fredholm/sobolev.hpp"

namespace fredholm {

using nlohmann::json;

namespace {

void check_config(const CliConfig& config) {
  if (config.grid_size < kMinGridSize) {
    fail(ErrorCode::InvalidConfig, "--grid must be at least " + std::to_string(kMinGridSize));
  }
  if (config.rank_tolerance && !(*config.rank_tolerance > 0.0)) {
    fail(ErrorCode::InvalidConfig, "--rank-tol must be positive");
  }
  if (config.consistency_tolerance && !(*config.consistency_tolerance > 0.0)) {
    fail(ErrorCode::InvalidConfig, "--consistency-tol must be positive");
  }
}

void emit(const CliConfig& config, const std::string& body, std::ostream& out) {
  if (config.output_path) {
    std::ofstream file(*config.output_path, std::ios::binary);
    if (!file) fail(ErrorCode::IoError, "cannot write '" + *config.output_path + "'");
    file << body;
    if (!file) fail(ErrorCode::IoError, "failed writing '" + *config.output_path + "'");
  } else {
    out << body;
  }
}

std::string dump(const json& document) { return document.dump(2) + "\n"; }

std::string format_complex(Complex z) {
  std::ostringstream s;
  s << std::setprecision(10) << z.real();
  if (z.imag() != 0.0) s << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return s.str();
}

std::string text_report(const FredholmReport& report) {
  std::ostringstream s;
  s << std::setprecision(6);
  s << "m = " << report.m << ", r = " << report.r << "\n"
    << "rank " << report.rank << ", dim ker " << report.dim_kernel << ", dim coker "
    << report.dim_cokernel << ", index " << report.index << "\n"
    << "invertible: " << (report.invertible ? "yes" : "no")
    << (report.rank_uncertain ? " (rank uncertain: singular value near tolerance)" : "") << "\n"
    << "singular values:";
  for (double v : report.singular_values) s << " " << v;
  s << "  (tolerance " << report.rank_tolerance << ")\n";
  return s.str();
}

std::string text_matrix(const CMatrix& mat) {
  std::ostringstream s;
  for (Index i = 0; i < mat.rows(); ++i) {
    s << "  [";
    for (Index j = 0; j < mat.cols(); ++j) s << (j ? ", " : "") << format_complex(mat(i, j));
    s << "]\n";
  }
  return s.str();
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}

}  // namespace

int run_analyze(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    check_config(config);
    const ProblemSpec problem = load_problem(config.input_path);
    const FundamentalMatrix Y = fundamental_matrix(problem, config.grid_size);
    const CharacteristicMatrix M =
        characteristic_matrix(Y, problem.boundary, problem, config.rank_tolerance);
    const FredholmReport report = fredholm_analysis(M);
    if (config.format == OutputFormat::Json) {
      emit(config, dump(analysis_to_json(M, report)), out);
    } else {
      emit(config, "characteristic matrix M(L,B):\n" + text_matrix(M.entries) + text_report(report),
           out);
    }
    return 0;
  });
}

int run_solve(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    check_config(config);
    const ProblemSpec problem = load_problem(config.input_path);
    SolveOptions options;
    options.grid_size = config.grid_size;
    options.rank_tolerance = config.rank_tolerance;
    if (config.consistency_tolerance) options.consistency_tolerance = *config.consistency_tolerance;
    const BvpSolution sol = solve(problem, options);
    if (config.format == OutputFormat::Json) {
      emit(config, dump(solution_to_json(sol, config.samples)), out);
      return 0;
    }
    std::ostringstream s;
    s << std::setprecision(6) << "status: " << to_string(sol.status) << "\n"
      << "reduced residual " << sol.reduced_residual << " (threshold "
      << sol.consistency_threshold << ")\n";
    if (sol.q_particular) {
      s << "q:";
      for (Index i = 0; i < sol.q_particular->size(); ++i) {
        s << " " << format_complex((*sol.q_particular)(i));
      }
      s << "\nkernel basis size " << sol.kernel_basis.size() << "\n"
        << "ode residual " << sol.ode_residual << ", boundary residual "
        << sol.boundary_residual << "\n";
      if (config.samples) {
        const auto& grid = sol.fundamental.grid();
        for (std::size_t i = 0; i < grid.size(); ++i) {
          s << grid[i];
          for (Index c = 0; c < sol.samples[i].size(); ++c) {
            s << " " << format_complex(sol.samples[i](c));
          }
          s << "\n";
        }
      }
    }
    s << text_report(sol.report);
    emit(config, s.str(), out);
    return 0;
  });
}

int run_verify(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    check_config(config);
    if (!config.corpus && config.input_path.empty()) {
      fail(ErrorCode::InvalidConfig, "verify needs a problem file or --corpus");
    }
    CrossCheckOptions options{config.grid_size, config.rank_tolerance};
    std::vector<OracleReport> reports;
    json skipped = json::array();
    json norms;

    if (config.corpus) {
      reports = run_builtin_corpus(options);
    }
    if (!config.input_path.empty()) {
      const ProblemSpec problem = load_problem(config.input_path);
      try {
        reports.push_back(cross_check(problem, options));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoApplicableOracle) throw;
        skipped.push_back({{"oracle_name", "cross_check"}, {"reason", e.what()}});
      }
      reports.push_back(column_identity_check(problem, 5, 11, config.grid_size));
      reports.push_back(continuity_probe(problem, {1e-2, 1e-3, 1e-4}, 7, config.grid_size));
      if (config.norms) {
        norms = norms_to_json(sobolev_slobodetsky_norm(problem.rhs, problem.space,
                                                       config.grid_size));
      }
    } else if (config.norms) {
      fail(ErrorCode::InvalidConfig, "--norms needs a problem file");
    }

    const bool pass = std::all_of(reports.begin(), reports.end(),
                                  [](const OracleReport& r) { return r.pass; });
    if (config.format == OutputFormat::Json) {
      json doc{{"pass", pass}, {"reports", json::array()}, {"skipped", skipped}};
      for (const auto& r : reports) doc["reports"].push_back(oracle_to_json(r));
      if (!norms.is_null()) doc["norms"] = norms;
      emit(config, dump(doc), out);
    } else {
      std::ostringstream s;
      s << std::setprecision(6);
      for (const auto& r : reports) {
        s << (r.pass ? "PASS " : "FAIL ") << r.oracle_name << "  max error " << r.max_abs_error
          << " (tolerance " << r.tolerance << ", " << r.details.size() << " cases)\n";
      }
      for (const auto& entry : skipped) {
        s << "SKIP " << entry["oracle_name"].get<std::string>() << ": "
          << entry["reason"].get<std::string>() << "\n";
      }
      if (!norms.is_null()) {
        s << "norms: integer part " << norms["integer_part_norm"].get<double>() << ", seminorm "
          << norms["seminorm"].get<double>() << ", total " << norms["total"].get<double>()
          << "\n";
      }
      s << (pass ? "all oracles passed\n" : "oracle failure\n");
      emit(config, s.str(), out);
    }
    if (!pass) {
      for (const auto& r : reports) {
        if (!r.pass) {
          err << "oracle " << r.oracle_name << " failed: max error " << r.max_abs_error
              << " > tolerance " << r.tolerance << "\n";
        }
      }
    }
    return pass ? 0 : 1;
  });
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Solvability analysis of linear boundary-value problems y' + A(t) y = f, By = c",
               "fredholm"};
  app.require_subcommand(1);
  CliConfig config;
  std::string format = "json";

  auto add_common = [&](CLI::App* sub, bool input_required) {
    auto* input = sub->add_option("input", config.input_path, "problem file (JSON)");
    if (input_required) input->required();
    sub->add_option("--grid", config.grid_size, "uniform grid size (>= 16)");
    sub->add_option("--rank-tol", config.rank_tolerance, "absolute singular value cutoff");
    sub->add_option("--consistency-tol", config.consistency_tolerance,
                    "relative consistency tolerance");
    sub->add_option("--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--output", config.output_path, "write the document to PATH");
  };

  auto* analyze = app.add_subcommand("analyze", "characteristic matrix and Fredholm numbers");
  add_common(analyze, true);
  auto* solve_cmd = app.add_subcommand("solve", "solve and classify the problem");
  add_common(solve_cmd, true);
  solve_cmd->add_flag("--samples", config.samples, "include the solution on the grid");
  auto* verify = app.add_subcommand("verify", "run the closed-form and property oracles");
  add_common(verify, false);
  verify->add_flag("--norms", config.norms, "Sobolev-Slobodetsky norm of the right-hand side");
  verify->add_flag("--corpus", config.corpus, "run the built-in random corpus");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error [" << to_string(ErrorCode::InvalidConfig) << "]: " << e.what() << "\n";
    return exit_code_for(ErrorCode::InvalidConfig);
  }

  config.format = format == "text" ? OutputFormat::Text : OutputFormat::Json;
  if (analyze->parsed()) {
    config.subcommand = "analyze";
    return run_analyze(config, out, err);
  }
  if (solve_cmd->parsed()) {
    config.subcommand = "solve";
    return run_solve(config, out, err);
  }
  config.subcommand = "verify";
  return run_verify(config, out, err);
}

}  // namespace fredholm
