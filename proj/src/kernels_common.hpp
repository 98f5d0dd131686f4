#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "l1sec/errors.hpp"
#include "l1sec/expanders.hpp"
#include "l1sec/kernels.hpp"
#include "l1sec/rng.hpp"

namespace l1sec::kernels::detail {

template <std::size_t W>
struct Mask {
  std::array<std::uint64_t, W> w{};

  void set(std::uint32_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  Mask operator|(const Mask& o) const {
    Mask r;
    for (std::size_t i = 0; i < W; ++i) r.w[i] = w[i] | o.w[i];
    return r;
  }
  std::uint32_t count() const {
    std::uint32_t c = 0;
    for (auto x : w) c += static_cast<std::uint32_t>(std::popcount(x));
    return c;
  }
};

template <std::size_t W>
std::vector<Mask<W>> left_masks(const BipartiteGraph& g) {
  std::vector<Mask<W>> m(g.N);
  for (std::uint32_t j = 0; j < g.n; ++j)
    for (Vertex v : g.right_adj[j]) m[v].set(j);
  return m;
}

inline void require_profile_scale(const BipartiteGraph& g) {
  if (g.n > 256) throw GuardError("profile enumeration needs n <= 256");
  if (g.N > 40) throw GuardError("profile enumeration needs N <= 40");
}

// Largest eigenvalue of the principal submatrix P[S, S], P = B B^T.
inline double principal_eig_rows(const Eigen::MatrixXd& B,
                                 const std::vector<int>& S) {
  const int s = static_cast<int>(S.size());
  if (s == 0) return 0.0;
  Eigen::MatrixXd rows(s, B.cols());
  for (int i = 0; i < s; ++i) rows.row(i) = B.row(S[i]);
  if (s == 1) return rows.row(0).squaredNorm();
  const Eigen::MatrixXd P = rows * rows.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

// Same with a precomputed projector.
inline double principal_eig_projector(const Eigen::MatrixXd& P,
                                      const std::vector<int>& S) {
  const int s = static_cast<int>(S.size());
  if (s == 0) return 0.0;
  if (s == 1) return P(S[0], S[0]);
  Eigen::MatrixXd sub(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) sub(i, j) = P(S[i], S[j]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sub, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

inline constexpr int kProjectorLimit = 2048;

// Lexicographic successor of a k-combination of [0, n); false at the end.
inline bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[i] == n - k + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

// The r-th k-combination of [0, n) in lexicographic order.
inline std::vector<int> unrank_combination(std::uint64_t r, int n, int k) {
  std::vector<int> c(k);
  int x = 0;
  for (int i = 0; i < k; ++i) {
    for (;; ++x) {
      const std::uint64_t below = binomial(n - x - 1, k - i - 1);
      if (r < below) break;
      r -= below;
    }
    c[i] = x++;
  }
  return c;
}

// Uniform s-subset of [0, n) via Floyd's algorithm, sorted.
inline std::vector<int> random_subset(CounterRng& rng, int n, int s) {
  std::vector<int> out;
  out.reserve(s);
  for (int j = n - s; j < n; ++j) {
    const int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(j) + 1));
    if (std::find(out.begin(), out.end(), t) == out.end())
      out.push_back(t);
    else
      out.push_back(j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline void require_subset_size(const Eigen::MatrixXd& B, int s) {
  if (s < 0 || s > B.rows())
    throw std::invalid_argument("subset size out of range");
}

}  // namespace l1sec::kernels::detail
