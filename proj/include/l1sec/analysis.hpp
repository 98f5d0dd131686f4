#pragma once

// Numerical side of the spread calculus: kernels of check matrices, the
// exhaustive spread oracle, sampled estimates and distortion witnesses.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "l1sec/certificate.hpp"
#include "l1sec/expanders.hpp"
#include "l1sec/sign_matrix.hpp"

namespace l1sec {

struct KernelBasis {
  std::uint32_t N = 0;
  Eigen::MatrixXd basis;  // N x dim, orthonormal columns

  Eigen::Index dim() const { return basis.cols(); }
};

inline constexpr std::uint32_t kDefaultAnalysisMaxN = 4096;
inline constexpr std::uint64_t kDefaultEnumBudget = 1'000'000;

// Orthonormal kernel basis from column-pivoted QR of A^T; pivots below
// 1e-7 times the largest count as zero.
KernelBasis kernel_basis(const Eigen::MatrixXd& A,
                         std::uint32_t max_n = kDefaultAnalysisMaxN);
KernelBasis kernel_basis(const SignCheckMatrix& A,
                         std::uint32_t max_n = kDefaultAnalysisMaxN);

// min over |S| <= t of sigma_min(B with rows S removed). X = {0} and t < 1
// give 1. Throws GuardError when C(N, floor t) exceeds the budget.
double exact_spread(const KernelBasis& B, double t,
                    std::uint64_t enum_budget = kDefaultEnumBudget);

// Minimum over `samples` random subsets of size floor(t): an upper
// estimate of the true spread, never a certificate.
double sampled_spread(const KernelBasis& B, double t, std::uint64_t samples,
                      std::uint64_t seed);

struct DistortionWitness {
  double value = 1.0;  // sqrt(N) |x|_2 / |x|_1
  Eigen::VectorXd x;
  std::size_t sparsity = 0;
};

// Largest ratio found over projected coordinate vectors, projected random
// sparse vectors and shrink-and-project refinements of the best ones.
// Every candidate is checked to lie in X before it counts.
DistortionWitness distortion_lower_bound(const KernelBasis& B,
                                         std::size_t budget = 2000,
                                         std::uint64_t seed = 0);

struct DistortionBound {
  double N = 0;
  DistortionWitness lower;
  std::optional<DistortionUpper> upper;
};

// Pushdown through a graph whose profile is given as a ProfileBound.
PushdownResult pushdown_certificate(const ProfileBound& profile,
                                    const SpreadCertificate& inner, double D,
                                    double T0);

struct SpreadScan {
  std::vector<std::pair<int, double>> exact;  // (t, eps_exact(t))
  std::optional<SpreadCertificate> best;      // minimizes the distortion bound
  std::optional<DistortionUpper> upper;
};

// Exact spread for t = 1..t_max (stopping at the enumeration budget) and
// the best distortion upper bound they certify.
SpreadScan scan_exact_spread(const KernelBasis& B, int t_max,
                             std::uint64_t enum_budget = kDefaultEnumBudget);

}  // namespace l1sec
