#include <omp.h>

#include <limits>

#include "kernels_common.hpp"

namespace l1sec::kernels {

using namespace detail;

namespace {

template <std::size_t W>
std::vector<std::uint32_t> profile_split(const BipartiteGraph& g) {
  const auto masks = left_masks<W>(g);
  const std::uint32_t N = g.N;
  const std::uint32_t L = N / 2;
  const std::uint32_t H = N - L;

  // Unions of every subset of the low L vertices, built incrementally.
  std::vector<Mask<W>> low(std::size_t{1} << L);
  for (std::uint64_t s = 1; s < low.size(); ++s) {
    const int v = std::countr_zero(s);
    low[s] = low[s & (s - 1)] | masks[v];
  }

  const std::uint32_t inf = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> best(N + 1, inf);
  const std::int64_t high_count = std::int64_t{1} << H;

#pragma omp parallel
  {
    std::vector<std::uint32_t> local(N + 1, inf);
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t h = 0; h < high_count; ++h) {
      Mask<W> acc;
      for (std::uint32_t b = 0; b < H; ++b)
        if ((h >> b) & 1) acc = acc | masks[L + b];
      const auto hs = static_cast<std::uint32_t>(std::popcount(static_cast<std::uint64_t>(h)));
      for (std::uint64_t s = 0; s < low.size(); ++s) {
        const std::uint32_t size = hs + static_cast<std::uint32_t>(std::popcount(s));
        const std::uint32_t c = (acc | low[s]).count();
        if (c < local[size]) local[size] = c;
      }
    }
#pragma omp critical
    for (std::uint32_t i = 0; i <= N; ++i) best[i] = std::min(best[i], local[i]);
  }
  return best;
}

}  // namespace

std::vector<std::uint32_t> profile_table_omp(const BipartiteGraph& g) {
  require_profile_scale(g);
  return g.n <= 64 ? profile_split<1>(g) : profile_split<4>(g);
}

double max_principal_eig_omp(const Eigen::MatrixXd& B, int s) {
  require_subset_size(B, s);
  if (s == 0) return 0.0;
  const int N = static_cast<int>(B.rows());
  const std::uint64_t total = binomial(N, s);
  const bool use_projector = N <= kProjectorLimit;
  const Eigen::MatrixXd P =
      use_projector ? Eigen::MatrixXd(B * B.transpose()) : Eigen::MatrixXd();
  constexpr std::uint64_t kChunk = 2048;
  const auto chunks = static_cast<std::int64_t>((total + kChunk - 1) / kChunk);

  double best = 0.0;
#pragma omp parallel for schedule(dynamic) reduction(max : best)
  for (std::int64_t ch = 0; ch < chunks; ++ch) {
    const std::uint64_t begin = static_cast<std::uint64_t>(ch) * kChunk;
    const std::uint64_t end = std::min(total, begin + kChunk);
    std::vector<int> c = unrank_combination(begin, N, s);
    for (std::uint64_t r = begin; r < end; ++r) {
      const double v = use_projector ? principal_eig_projector(P, c)
                                     : principal_eig_rows(B, c);
      best = std::max(best, v);
      next_combination(c, N);
    }
  }
  return best;
}

double sampled_principal_eig_omp(const Eigen::MatrixXd& B, int s,
                                 std::uint64_t samples, std::uint64_t seed) {
  require_subset_size(B, s);
  const int N = static_cast<int>(B.rows());
  double best = 0.0;
#pragma omp parallel for schedule(static) reduction(max : best)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(samples); ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    best = std::max(best, principal_eig_rows(B, random_subset(rng, N, s)));
  }
  return best;
}

}  // namespace l1sec::kernels
