#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>

#include "l1sec/errors.hpp"
#include "l1sec/analysis.hpp"
#include "l1sec/kerdock.hpp"
#include "l1sec/rng.hpp"

using namespace l1sec;

namespace {

// min over |S| = s of sigma_min(B without rows S), via full SVDs.
double spread_by_svd(const Eigen::MatrixXd& B, int s) {
  const int N = static_cast<int>(B.rows());
  double best = 1.0;
  std::vector<int> pick(s);
  for (int i = 0; i < s; ++i) pick[i] = i;
  for (;;) {
    Eigen::MatrixXd R(N - s, B.cols());
    for (int i = 0, r = 0, p = 0; i < N; ++i) {
      if (p < s && pick[p] == i) {
        ++p;
        continue;
      }
      R.row(r++) = B.row(i);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(R);
    best = std::min(best, svd.singularValues().minCoeff());
    int i = s - 1;
    while (i >= 0 && pick[i] == N - s + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

Eigen::MatrixXd random_signs(std::uint64_t seed, int rows, int cols) {
  CounterRng rng(seed);
  Eigen::MatrixXd A(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) A(i, j) = rng.bit() ? 1.0 : -1.0;
  return A;
}

}  // namespace

TEST_CASE("kernel basis is orthonormal and annihilated") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Eigen::MatrixXd A = random_signs(seed, 6, 14);
    A.row(5) = A.row(0) + A.row(1);  // force a rank drop
    const KernelBasis B = kernel_basis(A);
    CHECK(B.dim() == 14 - 5);
    CHECK((A * B.basis).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((B.basis.transpose() * B.basis - Eigen::MatrixXd::Identity(B.dim(), B.dim()))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
  }
  CHECK_THROWS_AS(kernel_basis(Eigen::MatrixXd::Ones(2, 50), 40), GuardError);
}

TEST_CASE("exact spread agrees with the SVD oracle") {
  for (std::uint64_t seed = 10; seed < 14; ++seed) {
    const KernelBasis B = kernel_basis(random_signs(seed, 5, 12));
    for (int t = 1; t <= 3; ++t) {
      double oracle = 1.0;
      for (int s = 0; s <= t; ++s) oracle = std::min(oracle, spread_by_svd(B.basis, s));
      CHECK(exact_spread(B, t) == doctest::Approx(oracle).epsilon(1e-9));
    }
  }
}

TEST_CASE("exact spread edge cases") {
  const KernelBasis trivial = kernel_basis(Eigen::MatrixXd::Identity(4, 4));
  CHECK(trivial.dim() == 0);
  CHECK(exact_spread(trivial, 3) == 1.0);
  const KernelBasis B = kernel_basis(random_signs(1, 4, 10));
  CHECK(exact_spread(B, 0.5) == 1.0);
  CHECK(exact_spread(B, 1) <= 1.0);
  CHECK_THROWS_AS(exact_spread(B, 5, 100), GuardError);
}

TEST_CASE("sampled spread never undercuts the exact value") {
  const KernelBasis B = kernel_basis(random_signs(21, 6, 16));
  for (int t = 1; t <= 3; ++t)
    CHECK(sampled_spread(B, t, 200, 5) >= exact_spread(B, t) - 1e-12);
}

TEST_CASE("distortion witness lies in the space and respects the upper bound") {
  const LocalSubspace L = local_subspace(16, 32);
  const KernelBasis B = kernel_basis(L.check);
  const DistortionWitness w = distortion_lower_bound(B, 500, 3);
  REQUIRE(w.x.size() == 32);
  CHECK((L.check.to_dense() * w.x).cwiseAbs().maxCoeff() < 1e-9 * w.x.norm());
  CHECK(w.value == doctest::Approx(std::sqrt(32.0) * w.x.norm() / w.x.lpNorm<1>()));
  CHECK(w.value >= 1.0);
  CHECK(w.value <= std::sqrt(32.0) + 1e-9);

  const SpreadScan scan = scan_exact_spread(B, 3);
  REQUIRE(scan.upper);
  CHECK(w.value <= scan.upper->value);
  CHECK(scan.exact.size() == 3);
}

TEST_CASE("spread scan stops at the enumeration budget") {
  const KernelBasis B = kernel_basis(random_signs(4, 8, 40));
  const SpreadScan scan = scan_exact_spread(B, 10, 1000);
  CHECK(scan.exact.size() == 2);  // C(40, 3) = 9880 is over the budget
}
