#include <cmath>
#include <limits>

#include "kernels_common.hpp"

namespace l1sec::kernels {

using namespace detail;

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max())
      return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

namespace {

template <std::size_t W>
void dfs(const std::vector<Mask<W>>& masks, std::uint32_t next,
         std::uint32_t size, const Mask<W>& acc, std::vector<std::uint32_t>& best) {
  const std::uint32_t c = acc.count();
  if (c < best[size]) best[size] = c;
  for (std::uint32_t v = next; v < masks.size(); ++v)
    dfs(masks, v + 1, size + 1, acc | masks[v], best);
}

template <std::size_t W>
std::vector<std::uint32_t> profile_dfs(const BipartiteGraph& g) {
  const auto masks = left_masks<W>(g);
  std::vector<std::uint32_t> best(g.N + 1, std::numeric_limits<std::uint32_t>::max());
  dfs(masks, 0, 0, Mask<W>{}, best);
  return best;
}

}  // namespace

std::vector<std::uint32_t> profile_table_serial(const BipartiteGraph& g) {
  require_profile_scale(g);
  return g.n <= 64 ? profile_dfs<1>(g) : profile_dfs<4>(g);
}

double max_principal_eig_serial(const Eigen::MatrixXd& B, int s) {
  require_subset_size(B, s);
  if (s == 0) return 0.0;
  std::vector<int> c(s);
  for (int i = 0; i < s; ++i) c[i] = i;
  double best = 0.0;
  do {
    best = std::max(best, principal_eig_rows(B, c));
  } while (next_combination(c, static_cast<int>(B.rows())));
  return best;
}

double sampled_principal_eig_serial(const Eigen::MatrixXd& B, int s,
                                    std::uint64_t samples, std::uint64_t seed) {
  require_subset_size(B, s);
  double best = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    CounterRng rng(seed, i);
    best = std::max(best, principal_eig_rows(
                              B, random_subset(rng, static_cast<int>(B.rows()), s)));
  }
  return best;
}

}  // namespace l1sec::kernels
