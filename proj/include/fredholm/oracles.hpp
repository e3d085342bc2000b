#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fredholm/fundamental_matrix.hpp"
#include "fredholm/problem.hpp"

namespace fredholm {

struct OracleCase {
  std::string label;
  double error = 0.0;
};

/// pass holds exactly when max_abs_error <= tolerance.
struct OracleReport {
  std::string oracle_name;
  double tolerance = 0.0;
  double max_abs_error = 0.0;
  bool pass = true;
  std::vector<OracleCase> details;

  void add(std::string label, double error);
  /// Appends the cases of another report with the same oracle.
  void merge(const OracleReport& other);
};

OracleReport make_report(std::string name, double tolerance);

inline constexpr double kExample1Tolerance = 1e-8;
inline constexpr double kExample2Tolerance = 1e-4;
inline constexpr double kColumnIdentityTolerance = 1e-8;

/// sum_k alphas[k] (-A)^k for a constant coefficient and one-point
/// conditions sum_k alphas[k] y^(k)(a).
CMatrix example1_characteristic(const CMatrix& A, const std::vector<CMatrix>& alphas);

/// Rank by singular values with the default relative tolerance, computed
/// independently of the pipeline's rank decision.
Index oracle_rank(const CMatrix& matrix);

/// (dim ker, dim coker) = (m - rank, r - rank) of example1_characteristic.
std::pair<Index, Index> example1_fredholm_numbers(const CMatrix& A,
                                                  const std::vector<CMatrix>& alphas);

/// alpha00 + alpha10 for zero coefficient and two-point conditions whose
/// higher (integer or Caputo) derivative terms annihilate Y = I.
CMatrix example2_characteristic(const CMatrix& alpha00, const CMatrix& alpha10);

/// max over nodes of |Y_{A + eps dA}(t_i) - Y_A(t_i)|_F.
double perturbation_gap(const ProblemSpec& problem, const CMatrix& direction, double eps,
                        int grid_size = kDefaultGridSize);

/// Local continuity of A -> Y: for decreasing scales, the gaps must decrease
/// and gap / eps must vary by less than a factor 10. The reported error is
/// log10(max ratio / min ratio), plus 2 if the gaps are not monotone;
/// tolerance 1.
OracleReport continuity_probe(const ProblemSpec& problem, const std::vector<double>& scales,
                              const CMatrix& direction, int grid_size = kDefaultGridSize);
/// Same with a random unit-Frobenius direction drawn from `seed`.
OracleReport continuity_probe(const ProblemSpec& problem, const std::vector<double>& scales,
                              std::uint64_t seed = 7, int grid_size = kDefaultGridSize);

enum class OracleClass { Example1, Example2 };

/// Which closed-form oracle covers the problem; NoApplicableOracle otherwise.
OracleClass classify(const ProblemSpec& problem);

struct CrossCheckOptions {
  int grid_size = kDefaultGridSize;
  /// Applied to the pipeline only; the oracle keeps its default rule.
  std::optional<double> rank_tolerance;
};

/// Pipeline characteristic matrix and Fredholm integers against the
/// closed-form oracle. Integer mismatches count as an error equal to the
/// summed absolute difference of (rank, dim ker, dim coker, index).
OracleReport cross_check(const ProblemSpec& problem, const CrossCheckOptions& options = {});

/// |B(Y q) - M q| / (1 + |M| |q|) for `trials` random q.
OracleReport column_identity_check(const ProblemSpec& problem, int trials, std::uint64_t seed,
                          int grid_size = kDefaultGridSize);

// ---------------------------------------------------------------------------
// Random instance generation.

/// Deterministic generator (bit-identical across platforms).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  double uniform(double lo = 0.0, double hi = 1.0);
  int integer(int lo, int hi);  // inclusive
  /// Uniform in the closed unit disk.
  Complex disk();
  CMatrix disk_matrix(Index rows, Index cols);

 private:
  std::uint64_t state_;
};

/// Constant A, conditions sum_k alpha_k y^(k)(a); m <= 4, r <= 5, n <= 3.
/// Roughly a third of the instances are made rank deficient. Instances with
/// a singular value within a factor 100 of the rank tolerance are redrawn.
ProblemSpec random_example1_problem(Rng& rng);

/// Zero A, two points, alpha00 y(t0) + alpha10 y(t1) plus Caputo terms of
/// the given orders (each < s - 1/p).
ProblemSpec random_example2_problem(Rng& rng, const std::vector<double>& fractional_orders = {
                                                      0.3, 0.5, 0.7});

/// Mixed coefficient kinds, point terms with integer and fractional
/// orders, optional integral term. r == m when `square`.
ProblemSpec random_general_problem(Rng& rng, bool square);

/// Alternating Example-1 / Example-2 instances.
std::vector<ProblemSpec> generate_corpus(int count, std::uint64_t seed);

/// One entry per oracle, aggregating cross_check over the corpus plus
/// B(Y q) = M q and continuity checks on general problems.
std::vector<OracleReport> run_builtin_corpus(const CrossCheckOptions& options,
                                             int corpus_size = 200, std::uint64_t seed = 2024);

}  // namespace fredholm
