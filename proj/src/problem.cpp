#include "fredholm/problem.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fredholm/error.hpp"
#include "fredholm/report_io.hpp"

namespace fredholm {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string join(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

[[noreturn]] void syntax(const std::string& path, const std::string& what) {
  fail(ErrorCode::SyntaxError, path + ": " + what);
}

const json& require(const json& object, const std::string& key, const std::string& path) {
  if (!object.is_object()) syntax(path, "expected an object");
  auto it = object.find(key);
  if (it == object.end()) syntax(join(path, key), "missing required key");
  return *it;
}

double read_real(const json& node, const std::string& path) {
  if (!node.is_number()) syntax(path, "expected a number");
  const double value = node.get<double>();
  if (!std::isfinite(value)) syntax(path, "number is not finite");
  return value;
}

Complex read_complex(const json& node, const std::string& path) {
  if (node.is_number()) return {read_real(node, path), 0.0};
  if (!node.is_array() || node.size() != 2) syntax(path, "expected a complex number [re, im]");
  return {read_real(node[0], join(path, 0)), read_real(node[1], join(path, 1))};
}

CVector read_vector(const json& node, const std::string& path) {
  if (!node.is_array()) syntax(path, "expected a list of complex numbers");
  CVector out(static_cast<Index>(node.size()));
  for (std::size_t i = 0; i < node.size(); ++i) {
    out(static_cast<Index>(i)) = read_complex(node[i], join(path, i));
  }
  return out;
}

CMatrix read_matrix(const json& node, const std::string& path) {
  if (!node.is_array() || node.empty()) syntax(path, "expected a non-empty list of rows");
  const auto rows = static_cast<Index>(node.size());
  Index cols = -1;
  CMatrix out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const CVector row = read_vector(node[i], join(path, i));
    if (cols < 0) {
      cols = row.size();
      out.resize(rows, cols);
    } else if (row.size() != cols) {
      syntax(join(path, i), "ragged matrix row");
    }
    out.row(static_cast<Index>(i)) = row.transpose();
  }
  return out;
}

CMatrix read_entry(const json& node, const std::string& path, bool is_vector) {
  return is_vector ? CMatrix(read_vector(node, path)) : read_matrix(node, path);
}

MatrixFunction read_function(const std::string& kind, const json& data, const Interval& domain,
                             bool is_vector, const std::string& path) {
  if (kind == "constant") {
    return MatrixFunction::constant(domain, read_entry(data, path, is_vector));
  }
  if (kind == "polynomial") {
    if (!data.is_array() || data.empty()) syntax(path, "expected a non-empty coefficient list");
    std::vector<CMatrix> coefficients;
    for (std::size_t i = 0; i < data.size(); ++i) {
      coefficients.push_back(read_entry(data[i], join(path, i), is_vector));
    }
    return MatrixFunction::polynomial(domain, std::move(coefficients));
  }
  if (kind == "sampled") {
    const json& nodes_json = require(data, "nodes", path);
    const json& values_json = require(data, "values", path);
    if (!nodes_json.is_array()) syntax(join(path, "nodes"), "expected a list of numbers");
    if (!values_json.is_array()) syntax(join(path, "values"), "expected a list");
    std::vector<double> nodes;
    for (std::size_t i = 0; i < nodes_json.size(); ++i) {
      nodes.push_back(read_real(nodes_json[i], join(join(path, "nodes"), i)));
    }
    std::vector<CMatrix> values;
    for (std::size_t i = 0; i < values_json.size(); ++i) {
      values.push_back(read_entry(values_json[i], join(join(path, "values"), i), is_vector));
    }
    int order = 3;
    if (auto it = data.find("order"); it != data.end()) {
      if (!it->is_number_integer()) syntax(join(path, "order"), "expected 1 or 3");
      order = it->get<int>();
    }
    try {
      return MatrixFunction::sampled(domain, std::move(nodes), std::move(values), order);
    } catch (const Error& e) {
      fail(e.code(), path + ": " + e.what());
    }
  }
  syntax(path, "unknown function kind '" + kind + "'");
}

json write_entry(const CMatrix& mat, bool is_vector) {
  return is_vector ? vector_to_json(mat.col(0)) : matrix_to_json(mat);
}

std::string kind_name(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::Constant: return "constant";
    case FunctionKind::Polynomial: return "polynomial";
    case FunctionKind::Sampled: return "sampled";
  }
  return "constant";
}

json write_function_data(const MatrixFunction& fn, bool is_vector) {
  switch (fn.kind()) {
    case FunctionKind::Constant:
      return write_entry(fn.matrices().front(), is_vector);
    case FunctionKind::Polynomial: {
      json out = json::array();
      for (const auto& c : fn.matrices()) out.push_back(write_entry(c, is_vector));
      return out;
    }
    case FunctionKind::Sampled: {
      json values = json::array();
      for (const auto& v : fn.matrices()) values.push_back(write_entry(v, is_vector));
      return json{{"nodes", fn.nodes()}, {"values", values}, {"order", fn.interpolation_order()}};
    }
  }
  return {};
}

std::string shape(Index rows, Index cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

void expect_shape(const MatrixFunction& fn, Index rows, Index cols, const std::string& what) {
  if (fn.rows() != rows || fn.cols() != cols) {
    fail(ErrorCode::DimensionMismatch, what + " is " + shape(fn.rows(), fn.cols()) +
                                           ", expected " + shape(rows, cols));
  }
}

}  // namespace

void validate(const ProblemSpec& problem) {
  const auto& iv = problem.interval;
  if (!std::isfinite(iv.a) || !std::isfinite(iv.b) || !(iv.a < iv.b)) {
    std::ostringstream msg;
    msg << "interval requires a < b, got a = " << iv.a << ", b = " << iv.b;
    fail(ErrorCode::EmptyInterval, msg.str());
  }
  const auto& sp = problem.space;
  if (!std::isfinite(sp.s) || !(sp.s > 1.0) || sp.s == std::floor(sp.s)) {
    fail(ErrorCode::InvalidSpace, "space.s must be a non-integer greater than 1, got " +
                                      std::to_string(sp.s));
  }
  if (!std::isfinite(sp.p) || !(sp.p >= 1.0)) {
    fail(ErrorCode::InvalidSpace, "space.p must satisfy 1 <= p < inf, got " + std::to_string(sp.p));
  }
  if (problem.m <= 0) fail(ErrorCode::DimensionMismatch, "dimension must be positive");
  const Index m = problem.m;
  const Index r = problem.r;
  expect_shape(problem.coefficient, m, m, "coefficient");
  expect_shape(problem.rhs, m, 1, "rhs");
  if (problem.boundary_rhs.size() != r || problem.boundary.r != r) {
    fail(ErrorCode::DimensionMismatch,
         "boundary_rhs has " + std::to_string(problem.boundary_rhs.size()) +
             " entries but the boundary operator has " + std::to_string(problem.boundary.r) +
             " rows");
  }
  if (!(problem.coefficient.domain() == iv) || !(problem.rhs.domain() == iv)) {
    fail(ErrorCode::OutOfDomain, "coefficient and rhs must be defined on the problem interval");
  }
  const double order_bound = sp.max_boundary_order();
  for (std::size_t i = 0; i < problem.boundary.point_terms.size(); ++i) {
    const auto& term = problem.boundary.point_terms[i];
    const std::string where = "boundary.point_terms[" + std::to_string(i) + "]";
    if (term.alpha.rows() != r || term.alpha.cols() != m) {
      fail(ErrorCode::DimensionMismatch, where + ".matrix is " +
                                             shape(term.alpha.rows(), term.alpha.cols()) +
                                             ", expected " + shape(r, m));
    }
    if (!iv.contains(term.t0)) {
      fail(ErrorCode::OutOfDomain, where + ".t = " + std::to_string(term.t0) +
                                       " lies outside the interval");
    }
    if (!std::isfinite(term.order) || term.order < 0.0 || !(term.order < order_bound)) {
      std::ostringstream msg;
      msg << where << ".order = " << term.order << " violates 0 <= order < s - 1/p = "
          << order_bound;
      fail(ErrorCode::InvalidOrder, msg.str());
    }
  }
  for (std::size_t i = 0; i < problem.boundary.integral_terms.size(); ++i) {
    const auto& kernel = problem.boundary.integral_terms[i].kernel;
    expect_shape(kernel, r, m, "boundary.integral_terms[" + std::to_string(i) + "].kernel");
    if (!(kernel.domain() == iv)) {
      fail(ErrorCode::OutOfDomain, "integral kernel must be defined on the problem interval");
    }
  }
}

ProblemSpec parse_problem(const json& document) {
  const std::string root;
  if (!document.is_object()) syntax("/", "document must be an object");
  ProblemSpec problem;

  const json& dim = require(document, "dimension", root);
  if (!dim.is_number_integer() || dim.get<long long>() <= 0) {
    syntax("/dimension", "expected a positive integer");
  }
  problem.m = static_cast<Index>(dim.get<long long>());

  const json& interval = require(document, "interval", root);
  problem.interval.a = read_real(require(interval, "a", "/interval"), "/interval/a");
  problem.interval.b = read_real(require(interval, "b", "/interval"), "/interval/b");
  if (!(problem.interval.a < problem.interval.b)) {
    std::ostringstream msg;
    msg << "/interval: requires a < b, got a = " << problem.interval.a
        << ", b = " << problem.interval.b;
    fail(ErrorCode::EmptyInterval, msg.str());
  }

  const json& space = require(document, "space", root);
  problem.space.s = read_real(require(space, "s", "/space"), "/space/s");
  problem.space.p = read_real(require(space, "p", "/space"), "/space/p");

  auto read_kind = [&](const json& parent, const char* key, const std::string& path) {
    const json& node = require(parent, key, path);
    if (!node.is_string()) syntax(join(path, key), "expected a string");
    return node.get<std::string>();
  };

  const json& coefficient = require(document, "coefficient", root);
  problem.coefficient = read_function(read_kind(coefficient, "kind", "/coefficient"),
                                      require(coefficient, "data", "/coefficient"),
                                      problem.interval, false, "/coefficient/data");

  const json& rhs = require(document, "rhs", root);
  problem.rhs = read_function(read_kind(rhs, "kind", "/rhs"), require(rhs, "data", "/rhs"),
                              problem.interval, true, "/rhs/data");

  problem.boundary_rhs = read_vector(require(document, "boundary_rhs", root), "/boundary_rhs");
  problem.r = problem.boundary_rhs.size();
  problem.boundary.r = problem.r;

  const json& boundary = require(document, "boundary", root);
  if (!boundary.is_object()) syntax("/boundary", "expected an object");
  if (auto it = boundary.find("point_terms"); it != boundary.end()) {
    if (!it->is_array()) syntax("/boundary/point_terms", "expected a list");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string path = join("/boundary/point_terms", i);
      const json& node = (*it)[i];
      PointTerm term;
      term.t0 = read_real(require(node, "t", path), join(path, "t"));
      term.order = read_real(require(node, "order", path), join(path, "order"));
      term.alpha = read_matrix(require(node, "matrix", path), join(path, "matrix"));
      problem.boundary.point_terms.push_back(std::move(term));
    }
  }
  if (auto it = boundary.find("integral_terms"); it != boundary.end()) {
    if (!it->is_array()) syntax("/boundary/integral_terms", "expected a list");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string path = join("/boundary/integral_terms", i);
      const json& node = (*it)[i];
      problem.boundary.integral_terms.push_back(
          {read_function(read_kind(node, "kernel_kind", path), require(node, "kernel_data", path),
                         problem.interval, false, join(path, "kernel_data"))});
    }
  }

  validate(problem);
  return problem;
}

ProblemSpec parse_problem(const std::string& text) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::SyntaxError, std::string("/: malformed JSON: ") + e.what());
  }
  return parse_problem(document);
}

ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_problem(buffer.str());
}

json serialize_problem(const ProblemSpec& problem) {
  json point_terms = json::array();
  for (const auto& term : problem.boundary.point_terms) {
    point_terms.push_back(
        {{"t", term.t0}, {"order", term.order}, {"matrix", matrix_to_json(term.alpha)}});
  }
  json integral_terms = json::array();
  for (const auto& term : problem.boundary.integral_terms) {
    integral_terms.push_back({{"kernel_kind", kind_name(term.kernel.kind())},
                              {"kernel_data", write_function_data(term.kernel, false)}});
  }
  return json{
      {"dimension", problem.m},
      {"interval", {{"a", problem.interval.a}, {"b", problem.interval.b}}},
      {"space", {{"s", problem.space.s}, {"p", problem.space.p}}},
      {"coefficient",
       {{"kind", kind_name(problem.coefficient.kind())},
        {"data", write_function_data(problem.coefficient, false)}}},
      {"rhs",
       {{"kind", kind_name(problem.rhs.kind())}, {"data", write_function_data(problem.rhs, true)}}},
      {"boundary", {{"point_terms", point_terms}, {"integral_terms", integral_terms}}},
      {"boundary_rhs", vector_to_json(problem.boundary_rhs)},
  };
}

CMatrix evaluate_coefficient(const ProblemSpec& problem, double t) {
  return problem.coefficient.evaluate(t);
}

}  // namespace fredholm
