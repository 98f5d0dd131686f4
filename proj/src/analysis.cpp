#include "l1sec/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "l1sec/errors.hpp"
#include "l1sec/kernels.hpp"
#include "l1sec/rng.hpp"

namespace l1sec {

KernelBasis kernel_basis(const Eigen::MatrixXd& A, std::uint32_t max_n) {
  const Eigen::Index N = A.cols();
  if (N > static_cast<Eigen::Index>(max_n))
    throw GuardError("kernel basis refused: N=" + std::to_string(N) +
                     " exceeds analysis guard " + std::to_string(max_n));
  KernelBasis out{static_cast<std::uint32_t>(N), {}};
  if (A.rows() == 0) {
    out.basis = Eigen::MatrixXd::Identity(N, N);
    return out;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A.transpose());
  qr.setThreshold(1e-7);
  const Eigen::Index r = qr.rank();
  const Eigen::MatrixXd Q = qr.householderQ();
  out.basis = Q.rightCols(N - r);
  return out;
}

KernelBasis kernel_basis(const SignCheckMatrix& A, std::uint32_t max_n) {
  if (A.cols() > max_n)
    throw GuardError("kernel basis refused: N=" + std::to_string(A.cols()) +
                     " exceeds analysis guard " + std::to_string(max_n));
  return kernel_basis(A.to_dense(), max_n);
}

namespace {

int subset_size(const KernelBasis& B, double t) {
  if (!(t >= 0)) throw std::invalid_argument("t must be nonnegative");
  return static_cast<int>(std::min<double>(std::floor(t + 1e-12), B.N));
}

}  // namespace

double exact_spread(const KernelBasis& B, double t, std::uint64_t enum_budget) {
  const int s = subset_size(B, t);
  if (B.dim() == 0 || s == 0) return 1.0;
  const std::uint64_t count = kernels::binomial(B.N, s);
  if (count > enum_budget)
    throw GuardError("exact spread refused: C(" + std::to_string(B.N) + "," +
                     std::to_string(s) + ")=" + std::to_string(count) +
                     " exceeds enumeration budget " + std::to_string(enum_budget));
  const double lam = kernels::max_principal_eig_omp(B.basis, s);
  return std::sqrt(std::max(0.0, 1.0 - lam));
}

double sampled_spread(const KernelBasis& B, double t, std::uint64_t samples,
                      std::uint64_t seed) {
  const int s = subset_size(B, t);
  if (B.dim() == 0 || s == 0 || samples == 0) return 1.0;
  const double lam = kernels::sampled_principal_eig_omp(B.basis, s, samples, seed);
  return std::sqrt(std::max(0.0, 1.0 - lam));
}

namespace {

double ratio(const Eigen::VectorXd& x) {
  const double l1 = x.lpNorm<1>();
  if (l1 <= 0) return 0.0;
  return std::sqrt(static_cast<double>(x.size())) * x.norm() / l1;
}

std::size_t support_size(const Eigen::VectorXd& x) {
  const double cut = 1e-9 * x.cwiseAbs().maxCoeff();
  return static_cast<std::size_t>((x.array().abs() > cut).count());
}

}  // namespace

DistortionWitness distortion_lower_bound(const KernelBasis& B, std::size_t budget,
                                         std::uint64_t seed) {
  DistortionWitness best;
  const Eigen::Index N = B.N;
  if (B.dim() == 0 || N == 0) return best;
  const Eigen::MatrixXd& Q = B.basis;
  auto project = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return Q * (Q.transpose() * v);
  };

  std::vector<std::pair<double, Eigen::VectorXd>> pool;
  auto consider = [&](Eigen::VectorXd x) {
    const double xn = x.norm();
    if (xn < 1e-12) return;
    x /= xn;
    if ((x - project(x)).norm() > 1e-8) return;  // not in X
    const double r = ratio(x);
    pool.emplace_back(r, x);
    if (r > best.value) {
      best.value = r;
      best.sparsity = support_size(x);
      best.x = x;
    }
  };

  CounterRng rng(seed, 0x6c6f776572ULL);
  const std::size_t coord_budget = std::min<std::size_t>(N, std::max<std::size_t>(budget / 2, 1));
  for (std::size_t c = 0; c < coord_budget; ++c) {
    const Eigen::Index i = coord_budget == static_cast<std::size_t>(N)
                               ? static_cast<Eigen::Index>(c)
                               : static_cast<Eigen::Index>(rng.below(N));
    consider(Q * Q.row(i).transpose());
  }

  std::vector<Eigen::Index> sparsities;
  for (Eigen::Index s = 2; s <= N; s *= 2) sparsities.push_back(s);
  const std::size_t sparse_budget = budget > coord_budget ? budget - coord_budget : 0;
  for (std::size_t k = 0; k < sparse_budget && !sparsities.empty(); ++k) {
    const Eigen::Index s = sparsities[k % sparsities.size()];
    Eigen::VectorXd v = Eigen::VectorXd::Zero(N);
    for (Eigen::Index j = 0; j < s; ++j)
      v(static_cast<Eigen::Index>(rng.below(N))) = rng.bit() ? 1.0 : -1.0;
    consider(project(v));
  }

  std::sort(pool.begin(), pool.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  pool.resize(std::min<std::size_t>(pool.size(), 8));
  const auto seeds = pool;
  for (const auto& [r0, x0] : seeds) {
    Eigen::VectorXd x = x0;
    for (int it = 0; it < 50; ++it) {
      const double tau = x.cwiseAbs().mean();
      Eigen::VectorXd y = x.unaryExpr([tau](double v) {
        const double a = std::abs(v) - tau;
        return a > 0 ? std::copysign(a, v) : 0.0;
      });
      y = project(y);
      if (y.norm() < 1e-12) break;
      consider(y);
      x = y / y.norm();
    }
  }
  return best;
}

PushdownResult pushdown_certificate(const ProfileBound& profile,
                                    const SpreadCertificate& inner, double D,
                                    double T0) {
  return pushdown_certificate(profile.evaluate(T0), profile.provenance(),
                              profile.describe(), inner, D, T0);
}

SpreadScan scan_exact_spread(const KernelBasis& B, int t_max,
                             std::uint64_t enum_budget) {
  SpreadScan scan;
  const double N = B.N;
  double best_delta = std::numeric_limits<double>::infinity();
  for (int t = 1; t <= t_max && t <= static_cast<int>(B.N); ++t) {
    if (kernels::binomial(B.N, t) > enum_budget) break;
    const double eps = exact_spread(B, t, enum_budget);
    scan.exact.emplace_back(t, eps);
    if (eps <= 1e-9) break;  // larger t can only do worse
    const double delta = std::sqrt(N / t) / (eps * eps);
    if (delta < best_delta) {
      best_delta = delta;
      std::ostringstream note;
      note << "exact spread oracle t=" << t << " eps=" << eps;
      scan.best = SpreadCertificate::absolute(t, std::min(1.0, eps),
                                              Provenance::exact_oracle, note.str());
    }
  }
  if (scan.best) {
    // eps carries eigensolver rounding; shave it so the bound stays conservative.
    SpreadCertificate c = *scan.best;
    c.eps *= 1 - 1e-9;
    scan.upper = spread_to_distortion(c, N);
  }
  return scan;
}

}  // namespace l1sec
