#pragma once

// Basis-pursuit decoding and sparse-recovery experiments.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "l1sec/errors.hpp"
#include "l1sec/sign_matrix.hpp"

namespace l1sec {

using SparseRows = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct InfeasibleMeasurement : Error {
  explicit InfeasibleMeasurement(const std::string& what)
      : Error(ExitCode::infeasible, what) {}
};

struct SolverNotConverged : Error {
  explicit SolverNotConverged(const std::string& what) : Error(ExitCode::guard, what) {}
};

struct BasisPursuitOptions {
  double tol_feas = 1e-8;
  double tol_opt = 1e-7;
  int max_iterations = 200;
};

struct BasisPursuitResult {
  Eigen::VectorXd v;
  double objective = 0;
  double residual = 0;  // |M v - y|_inf
  int iterations = 0;
  bool polished = false;
};

// min |v|_1 subject to M v = y, solved as min 1^T (u + w) with
// M (u - w) = y, u, w >= 0, by a primal-dual interior-point method followed
// by a least-squares refit on the detected support.
BasisPursuitResult basis_pursuit(const SparseRows& M, const Eigen::VectorXd& y,
                                 const BasisPursuitOptions& opt = {});
BasisPursuitResult basis_pursuit(const Eigen::MatrixXd& M, const Eigen::VectorXd& y,
                                 const BasisPursuitOptions& opt = {});

// l1 error of the best k-sparse approximation: sum of the N - k smallest |x_i|.
double sigma_k(const Eigen::VectorXd& x, std::size_t k);

struct RecoveryReport {
  std::size_t s = 0;
  bool success = false;
  double rel_error = 0;
  double sigma = 0;  // sigma_s(x)_1
  std::optional<double> stability_ratio;  // |x - v|_2 sqrt(s) / sigma
  double objective = 0;
};

// Signal: uniform support of size s, values +-(1 + U[0,1]); optional dense
// perturbation with l1 mass `noise`. Success means relative l2 error <= 1e-6.
RecoveryReport recovery_trial(const SparseRows& M, std::size_t s, double noise,
                              std::uint64_t seed, const BasisPursuitOptions& opt = {});

struct CurveRow {
  std::size_t s = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t solver_failures = 0;
  double rate = 0;
  double smoothed = 0;  // isotonic (nonincreasing in s) fit of rate
};

std::uint64_t trial_seed(std::uint64_t seed, std::size_t s, std::size_t trial);

// Trials run in parallel with per-trial seeds; results match the serial path.
std::vector<CurveRow> recovery_curve(const SparseRows& M,
                                     const std::vector<std::size_t>& s_grid,
                                     std::size_t trials, std::uint64_t seed,
                                     const BasisPursuitOptions& opt = {});
std::vector<CurveRow> recovery_curve_serial(const SparseRows& M,
                                            const std::vector<std::size_t>& s_grid,
                                            std::size_t trials, std::uint64_t seed,
                                            const BasisPursuitOptions& opt = {});

// Pool-adjacent-violators fit, nonincreasing, weighted.
std::vector<double> isotonic_nonincreasing(const std::vector<double>& values,
                                           const std::vector<double>& weights);

// Largest s whose smoothed rate is at least `threshold` (0 if none).
std::size_t phase_transition(const std::vector<CurveRow>& curve, double threshold = 0.99);

void write_curve(std::ostream& out, const std::vector<CurveRow>& curve);

}  // namespace l1sec
