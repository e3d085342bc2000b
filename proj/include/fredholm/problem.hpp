#pragma once

#include <string>

#include <json.hpp>

#include "fredholm/boundary_operator.hpp"
#include "fredholm/matrix_function.hpp"
#include "fredholm/types.hpp"

namespace fredholm {

/// Linear boundary-value problem y' + A(t) y = f(t) on (a, b), B y = c,
/// with m equations and r scalar boundary conditions.
struct ProblemSpec {
  Index m = 0;
  Index r = 0;
  Interval interval;
  SpaceParams space;
  MatrixFunction coefficient;  // A, m x m
  MatrixFunction rhs;          // f, m x 1
  BoundaryOperator boundary;
  CVector boundary_rhs;        // c, length r

  bool operator==(const ProblemSpec&) const = default;
};

/// Checks every structural invariant; throws the matching Error.
void validate(const ProblemSpec& problem);

ProblemSpec parse_problem(const nlohmann::json& document);
/// Parses UTF-8 text; malformed JSON is a SyntaxError.
ProblemSpec parse_problem(const std::string& text);
ProblemSpec load_problem(const std::string& path);

nlohmann::json serialize_problem(const ProblemSpec& problem);

CMatrix evaluate_coefficient(const ProblemSpec& problem, double t);

}  // namespace fredholm
