#include "fredholm/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fredholm/characteristic.hpp"
#include "fredholm/error.hpp"

namespace fredholm {

void OracleReport::add(std::string label, double error) {
  max_abs_error = std::max(max_abs_error, error);
  pass = max_abs_error <= tolerance;
  details.push_back({std::move(label), error});
}

void OracleReport::merge(const OracleReport& other) {
  for (const auto& c : other.details) add(c.label, c.error);
}

OracleReport make_report(std::string name, double tolerance) {
  OracleReport report;
  report.oracle_name = std::move(name);
  report.tolerance = tolerance;
  return report;
}

CMatrix example1_characteristic(const CMatrix& A, const std::vector<CMatrix>& alphas) {
  if (alphas.empty()) fail(ErrorCode::DimensionMismatch, "need at least one alpha matrix");
  if (A.rows() != A.cols()) fail(ErrorCode::DimensionMismatch, "A must be square");
  const Index r = alphas.front().rows();
  for (const auto& alpha : alphas) {
    if (alpha.rows() != r || alpha.cols() != A.rows()) {
      fail(ErrorCode::DimensionMismatch, "alpha matrices must all be r x m");
    }
  }
  CMatrix power = CMatrix::Identity(A.rows(), A.cols());
  CMatrix sum = CMatrix::Zero(r, A.cols());
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    sum += alphas[k] * power;
    power = power * (-A);
  }
  return sum;
}

Index oracle_rank(const CMatrix& matrix) {
  if (matrix.size() == 0) return 0;
  const Eigen::VectorXd sv = matrix.jacobiSvd().singularValues();
  const double tol = default_rank_tolerance(matrix.rows(), matrix.cols(), sv(0));
  return (sv.array() > tol).count();
}

std::pair<Index, Index> example1_fredholm_numbers(const CMatrix& A,
                                                  const std::vector<CMatrix>& alphas) {
  const CMatrix M = example1_characteristic(A, alphas);
  const Index rank = oracle_rank(M);
  return {M.cols() - rank, M.rows() - rank};
}

CMatrix example2_characteristic(const CMatrix& alpha00, const CMatrix& alpha10) {
  if (alpha00.rows() != alpha10.rows() || alpha00.cols() != alpha10.cols()) {
    fail(ErrorCode::DimensionMismatch, "alpha00 and alpha10 must have equal shapes");
  }
  return alpha00 + alpha10;
}

double perturbation_gap(const ProblemSpec& problem, const CMatrix& direction, double eps,
                        int grid_size) {
  ProblemSpec perturbed = problem;
  perturbed.coefficient = problem.coefficient.plus_constant(eps * direction);
  const FundamentalMatrix base = fundamental_matrix(problem, grid_size);
  const FundamentalMatrix moved = fundamental_matrix(perturbed, grid_size);
  double gap = 0.0;
  for (std::size_t i = 0; i < base.values().size(); ++i) {
    gap = std::max(gap, (moved.values()[i] - base.values()[i]).norm());
  }
  return gap;
}

OracleReport continuity_probe(const ProblemSpec& problem, const std::vector<double>& scales,
                              const CMatrix& direction, int grid_size) {
  if (scales.size() < 2) fail(ErrorCode::InvalidConfig, "continuity probe needs two scales");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0.0) || (i > 0 && !(scales[i] < scales[i - 1]))) {
      fail(ErrorCode::InvalidConfig, "perturbation scales must be positive and decreasing");
    }
  }
  OracleReport report = make_report("continuity", 1.0);
  std::vector<double> gaps;
  for (double eps : scales) gaps.push_back(perturbation_gap(problem, direction, eps, grid_size));

  bool monotone = true;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    if (i > 0 && !(gaps[i] < gaps[i - 1])) monotone = false;
    const double ratio = gaps[i] / scales[i];
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  double spread = lo > 0.0 ? std::log10(hi / lo) : 2.0;
  if (!monotone) spread += 2.0;

  std::ostringstream label;
  label << "gap/eps in [" << lo << ", " << hi << "]" << (monotone ? "" : ", non-monotone");
  report.add(label.str(), spread);
  return report;
}

OracleReport continuity_probe(const ProblemSpec& problem, const std::vector<double>& scales,
                              std::uint64_t seed, int grid_size) {
  Rng rng(seed);
  CMatrix direction = rng.disk_matrix(problem.m, problem.m);
  if (direction.norm() == 0.0) direction = CMatrix::Identity(problem.m, problem.m);
  direction /= direction.norm();
  return continuity_probe(problem, scales, direction, grid_size);
}

OracleClass classify(const ProblemSpec& problem) {
  const auto& boundary = problem.boundary;
  if (boundary.integral_terms.empty() && problem.coefficient.is_identically_zero()) {
    return OracleClass::Example2;
  }
  const bool one_point_integer =
      std::all_of(boundary.point_terms.begin(), boundary.point_terms.end(), [&](const auto& term) {
        return term.t0 == problem.interval.a && term.order == std::floor(term.order);
      });
  if (boundary.integral_terms.empty() && problem.coefficient.kind() == FunctionKind::Constant &&
      one_point_integer) {
    return OracleClass::Example1;
  }
  fail(ErrorCode::NoApplicableOracle,
       "no closed-form oracle covers this problem (needs constant A with one-point integer "
       "conditions at a, or zero A with point conditions)");
}

namespace {

CMatrix oracle_matrix(const ProblemSpec& problem, OracleClass cls) {
  const Index r = problem.r;
  const Index m = problem.m;
  if (cls == OracleClass::Example1) {
    int top = 0;
    for (const auto& term : problem.boundary.point_terms) {
      top = std::max(top, static_cast<int>(term.order));
    }
    std::vector<CMatrix> alphas(static_cast<std::size_t>(top) + 1, CMatrix::Zero(r, m));
    for (const auto& term : problem.boundary.point_terms) {
      alphas[static_cast<std::size_t>(term.order)] += term.alpha;
    }
    return example1_characteristic(problem.coefficient.matrices().front(), alphas);
  }
  // Order-zero terms, grouped by point; any number of points is accepted.
  CMatrix sum = CMatrix::Zero(r, m);
  for (const auto& term : problem.boundary.point_terms) {
    if (term.order == 0.0) sum = example2_characteristic(sum, term.alpha);
  }
  return sum;
}

}  // namespace

OracleReport cross_check(const ProblemSpec& problem, const CrossCheckOptions& options) {
  const OracleClass cls = classify(problem);
  const CMatrix expected = oracle_matrix(problem, cls);
  const FundamentalMatrix Y = fundamental_matrix(problem, options.grid_size);
  const CharacteristicMatrix M =
      characteristic_matrix(Y, problem.boundary, problem, options.rank_tolerance);
  const FredholmReport report = fredholm_analysis(M);

  const Index rank = oracle_rank(expected);
  const Index dim_ker = problem.m - rank;
  const Index dim_coker = problem.r - rank;
  const Index index = problem.m - problem.r;
  const auto mismatch = std::abs(report.rank - rank) + std::abs(report.dim_kernel - dim_ker) +
                        std::abs(report.dim_cokernel - dim_coker) +
                        std::abs(report.index - index);
  const double entry_error =
      expected.size() > 0 ? (M.entries - expected).cwiseAbs().maxCoeff() : 0.0;

  const bool first = cls == OracleClass::Example1;
  OracleReport out = make_report(first ? "cross_check/example1" : "cross_check/example2",
                                 first ? kExample1Tolerance : kExample2Tolerance);
  std::ostringstream label;
  label << "m=" << problem.m << " r=" << problem.r << " rank=" << report.rank
        << " oracle_rank=" << rank;
  out.add(label.str(), std::max(entry_error, static_cast<double>(mismatch)));
  return out;
}

OracleReport column_identity_check(const ProblemSpec& problem, int trials, std::uint64_t seed,
                          int grid_size) {
  const FundamentalMatrix Y = fundamental_matrix(problem, grid_size);
  const CharacteristicMatrix M = characteristic_matrix(Y, problem.boundary, problem);
  const double norm_m = M.singular_values.size() > 0 ? M.singular_values(0) : 0.0;
  Rng rng(seed);
  OracleReport out = make_report("column_identity", kColumnIdentityTolerance);
  for (int i = 0; i < trials; ++i) {
    const CVector q = rng.disk_matrix(problem.m, 1);
    const OdeSolutionCurve curve(Y, nullptr, problem, q);
    const CVector direct = apply_boundary(problem.boundary, curve, problem, grid_size);
    const double err = (direct - M.entries * q).norm() / (1.0 + norm_m * q.norm());
    out.add("m=" + std::to_string(problem.m) + " r=" + std::to_string(problem.r), err);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::uint64_t Rng::next() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
  const double unit = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

int Rng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(next() % span);
}

Complex Rng::disk() {
  const double radius = std::sqrt(uniform());
  const double angle = uniform(0.0, 2.0 * std::numbers::pi);
  return std::polar(radius, angle);
}

CMatrix Rng::disk_matrix(Index rows, Index cols) {
  CMatrix out(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) out(i, j) = disk();
  }
  return out;
}

namespace {

bool well_posed_rank(const CMatrix& matrix) {
  if (matrix.size() == 0) return true;
  const Eigen::VectorXd sv = matrix.jacobiSvd().singularValues();
  const double tol = default_rank_tolerance(matrix.rows(), matrix.cols(), sv(0));
  if (tol == 0.0) return true;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) >= tol / 100.0 && sv(i) <= tol * 100.0) return false;
  }
  return true;
}

// Copies row `from` over row `to` in every matrix.
void duplicate_row(std::vector<CMatrix>& mats, Index from, Index to) {
  for (auto& mat : mats) mat.row(to) = mat.row(from);
}

ProblemSpec base_problem(Rng& rng, Index m, Index r, SpaceParams space) {
  ProblemSpec problem;
  problem.m = m;
  problem.r = r;
  problem.interval.a = rng.uniform(-1.0, 1.0);
  problem.interval.b = problem.interval.a + rng.uniform(0.5, 2.0);
  problem.space = space;
  problem.rhs = MatrixFunction::constant(problem.interval, rng.disk_matrix(m, 1));
  problem.boundary.r = r;
  problem.boundary_rhs = rng.disk_matrix(r, 1);
  return problem;
}

}  // namespace

ProblemSpec random_example1_problem(Rng& rng) {
  for (;;) {
    const Index m = rng.integer(1, 4);
    const Index r = rng.integer(1, 5);
    const int n = rng.integer(1, 3);
    ProblemSpec problem = base_problem(rng, m, r, {n + 0.5, 2.0});
    const CMatrix A = rng.disk_matrix(m, m);
    problem.coefficient = MatrixFunction::constant(problem.interval, A);
    std::vector<CMatrix> alphas;
    for (int k = 0; k < n; ++k) alphas.push_back(rng.disk_matrix(r, m));
    const int variant = rng.integer(0, 5);
    if (variant <= 1 && r >= 2) {
      duplicate_row(alphas, 0, r - 1);
    } else if (variant == 2) {
      for (auto& alpha : alphas) alpha.setZero();
    }
    if (!well_posed_rank(example1_characteristic(A, alphas))) continue;
    for (int k = 0; k < n; ++k) {
      problem.boundary.point_terms.push_back({problem.interval.a, static_cast<double>(k), alphas[k]});
    }
    return problem;
  }
}

ProblemSpec random_example2_problem(Rng& rng, const std::vector<double>& fractional_orders) {
  for (;;) {
    const Index m = rng.integer(1, 4);
    const Index r = rng.integer(1, 5);
    ProblemSpec problem = base_problem(rng, m, r, {1.5, 2.0});
    problem.coefficient = MatrixFunction::zero(problem.interval, m, m);
    const auto& iv = problem.interval;
    const double t0 = rng.integer(0, 3) == 0 ? iv.a : rng.uniform(iv.a, iv.b);
    const double t1 = rng.uniform(iv.a, iv.b);

    const CMatrix alpha00 = rng.disk_matrix(r, m);
    std::vector<CMatrix> target{rng.disk_matrix(r, m)};
    if (rng.integer(0, 2) == 0 && r >= 2) duplicate_row(target, 0, r - 1);
    const CMatrix alpha10 = target.front() - alpha00;
    if (!well_posed_rank(example2_characteristic(alpha00, alpha10))) continue;

    auto push_extra = [&](double t) {
      const int extra = rng.integer(0, 2);
      for (int j = 0; j < extra && !fractional_orders.empty(); ++j) {
        const double beta = fractional_orders[static_cast<std::size_t>(
            rng.integer(0, static_cast<int>(fractional_orders.size()) - 1))];
        problem.boundary.point_terms.push_back({t, beta, rng.disk_matrix(r, m)});
      }
    };
    problem.boundary.point_terms.push_back({t0, 0.0, alpha00});
    push_extra(t0);
    problem.boundary.point_terms.push_back({t1, 0.0, alpha10});
    push_extra(t1);
    return problem;
  }
}

ProblemSpec random_general_problem(Rng& rng, bool square) {
  const Index m = rng.integer(1, 3);
  const Index r = square ? m : rng.integer(1, 4);
  ProblemSpec problem = base_problem(rng, m, r, {2.5, 2.0});
  const Interval iv = problem.interval;

  switch (rng.integer(0, 2)) {
    case 0:
      problem.coefficient = MatrixFunction::constant(iv, rng.disk_matrix(m, m));
      break;
    case 1: {
      std::vector<CMatrix> coeffs;
      const int degree = rng.integer(1, 2);
      for (int k = 0; k <= degree; ++k) coeffs.push_back(rng.disk_matrix(m, m));
      problem.coefficient = MatrixFunction::polynomial(iv, std::move(coeffs));
      break;
    }
    default: {
      const CMatrix base = rng.disk_matrix(m, m);
      const CMatrix wave = rng.disk_matrix(m, m);
      std::vector<double> nodes;
      std::vector<CMatrix> values;
      const int count = 33;
      for (int i = 0; i < count; ++i) {
        const double t = iv.a + iv.length() * i / (count - 1);
        nodes.push_back(t);
        values.push_back(base + std::sin(t) * wave);
      }
      problem.coefficient = MatrixFunction::sampled(iv, std::move(nodes), std::move(values), 3);
      break;
    }
  }
  std::vector<CMatrix> rhs_coeffs;
  const int rhs_degree = rng.integer(0, 2);
  for (int k = 0; k <= rhs_degree; ++k) rhs_coeffs.push_back(rng.disk_matrix(m, 1));
  problem.rhs = MatrixFunction::polynomial(iv, std::move(rhs_coeffs));

  static constexpr double kOrders[] = {0.0, 0.0, 1.0, 0.5, 1.5, 0.7};
  const int terms = rng.integer(1, 3);
  for (int i = 0; i < terms; ++i) {
    const double t0 = rng.integer(0, 2) == 0 ? iv.a : rng.uniform(iv.a, iv.b);
    problem.boundary.point_terms.push_back({t0, kOrders[rng.integer(0, 5)], rng.disk_matrix(r, m)});
  }
  if (rng.integer(0, 1) == 0) {
    if (rng.integer(0, 1) == 0) {
      problem.boundary.integral_terms.push_back({MatrixFunction::constant(iv, rng.disk_matrix(r, m))});
    } else {
      problem.boundary.integral_terms.push_back(
          {MatrixFunction::polynomial(iv, {rng.disk_matrix(r, m), rng.disk_matrix(r, m)})});
    }
  }
  return problem;
}

std::vector<ProblemSpec> generate_corpus(int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ProblemSpec> corpus;
  corpus.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    corpus.push_back(i % 2 == 0 ? random_example1_problem(rng) : random_example2_problem(rng));
  }
  return corpus;
}

std::vector<OracleReport> run_builtin_corpus(const CrossCheckOptions& options, int corpus_size,
                                             std::uint64_t seed) {
  OracleReport example1 = make_report("cross_check/example1", kExample1Tolerance);
  OracleReport example2 = make_report("cross_check/example2", kExample2Tolerance);
  for (const auto& problem : generate_corpus(corpus_size, seed)) {
    const OracleReport one = cross_check(problem, options);
    (one.oracle_name == example1.oracle_name ? example1 : example2).merge(one);
  }

  Rng rng(seed + 1);
  OracleReport identity = make_report("column_identity", kColumnIdentityTolerance);
  OracleReport continuity = make_report("continuity", 1.0);
  for (int i = 0; i < 20; ++i) {
    const ProblemSpec problem = random_general_problem(rng, i % 2 == 0);
    identity.merge(column_identity_check(problem, 5, seed + 100 + i, options.grid_size));
    if (i < 5) {
      continuity.merge(continuity_probe(problem, {1e-2, 1e-3, 1e-4}, seed + 200 + i,
                                        options.grid_size));
    }
  }
  return {example1, example2, identity, continuity};
}

}  // namespace fredholm
