#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <sstream>

#include "l1sec/errors.hpp"
#include "l1sec/expanders.hpp"
#include "l1sec/rng.hpp"

using namespace l1sec;

namespace {

// Minimum neighborhood over all subsets of size exactly s, by bitmask.
std::vector<std::uint32_t> profile_by_masks(const BipartiteGraph& g) {
  const auto left = g.left_adj();
  std::vector<std::uint32_t> best(g.N + 1, g.n);
  best[0] = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << g.N); ++mask) {
    std::set<Vertex> nb;
    for (std::uint32_t i = 0; i < g.N; ++i)
      if (mask >> i & 1) nb.insert(left[i].begin(), left[i].end());
    const auto s = static_cast<std::size_t>(std::popcount(mask));
    best[s] = std::min<std::uint32_t>(best[s], static_cast<std::uint32_t>(nb.size()));
  }
  return best;
}

BipartiteAdjacency random_left_regular(CounterRng& rng, std::uint32_t N, std::uint32_t n,
                                       std::uint32_t D) {
  BipartiteAdjacency H{N, std::vector<std::vector<Vertex>>(n)};
  for (Vertex v = 0; v < N; ++v) {
    std::vector<Vertex> right(n);
    for (Vertex j = 0; j < n; ++j) right[j] = j;
    for (std::uint32_t i = 0; i < D; ++i) {
      const auto pick = i + static_cast<std::uint32_t>(rng.below(n - i));
      std::swap(right[i], right[pick]);
      H.right_adj[right[i]].push_back(v);
    }
  }
  return H;
}

}  // namespace

TEST_CASE("cycle incidence graph") {
  const BipartiteGraph g = edge_vertex_incidence(cycle_graph(5));
  CHECK(g.N == 5);
  CHECK(g.n == 5);
  CHECK(g.D == 2);
  CHECK(g.d == 2);
  CHECK(to_graph_string(edge_vertex_incidence(cycle_graph(3))).rfind("GRAPH 3 3 2 2\n", 0) == 0);
}

TEST_CASE("graph text round trip and malformed input") {
  const BipartiteGraph g = edge_vertex_incidence(cycle_graph(7));
  std::istringstream in(to_graph_string(g));
  CHECK(read_graph(in) == g);

  std::istringstream bad_header("GRAF 3 3 2 2\n0 1\n1 2\n0 2\n");
  CHECK_THROWS_AS(read_graph(bad_header), ParseError);
  std::istringstream unsorted("GRAPH 3 3 2 2\n1 0\n1 2\n0 2\n");
  CHECK_THROWS_AS(read_graph(unsorted), ParseError);
  std::istringstream short_file("GRAPH 3 3 2 2\n0 1\n");
  CHECK_THROWS_AS(read_graph(short_file), ParseError);
  std::istringstream out_of_range("GRAPH 3 3 2 2\n0 1\n1 2\n0 9\n");
  CHECK_THROWS_AS(read_graph(out_of_range), ParseError);
}

TEST_CASE("LPS graphs are Ramanujan") {
  for (auto [p, q] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{5, 13}, {13, 17}}) {
    const LpsGraph lps = build_lps(p, q);
    lps.graph.validate();
    CHECK(lps.graph.degree == p + 1);
    const double lam = second_eigenvalue(lps.graph);
    CHECK(lam <= 2 * std::sqrt(double(p)) + 1e-6);
  }
  CHECK_THROWS_AS(build_lps(7, 13), ParameterError);
  CHECK_THROWS_AS(build_lps(5, 5), ParameterError);
}

TEST_CASE("Lanczos agrees with the dense eigensolve") {
  const LpsGraph lps = build_lps(5, 13);
  CHECK(second_eigenvalue_lanczos(lps.graph) ==
        doctest::Approx(second_eigenvalue(lps.graph)).epsilon(1e-6));
}

TEST_CASE("Alon-Chung edge count holds on random subsets") {
  const LpsGraph lps = build_lps(5, 13);
  const double lam = second_eigenvalue(lps.graph);
  CounterRng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vertex> s;
    for (Vertex v = 0; v < lps.graph.vertices; ++v)
      if (rng.uniform() < 0.1 + 0.01 * trial) s.push_back(v);
    CHECK(alon_chung_check(lps.graph, lam, s));
  }
}

TEST_CASE("right regularization preserves expansion") {
  CounterRng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const auto N = static_cast<std::uint32_t>(4 + rng.below(9));
    const auto n = static_cast<std::uint32_t>(3 + rng.below(6));
    const auto D = static_cast<std::uint32_t>(1 + rng.below(std::min<std::uint32_t>(n, 4)));
    const BipartiteAdjacency H = random_left_regular(rng, N, n, D);
    const BipartiteGraph G = right_regularize(H);
    G.validate();
    CHECK(G.n <= 2 * n);
    CHECK(G.d == (N * D + n - 1) / n);
    for (auto deg : G.left_degrees()) CHECK(deg <= 2 * D);

    // Input profile straight from the adjacency lists.
    std::vector<std::vector<Vertex>> left(N);
    for (Vertex j = 0; j < n; ++j)
      for (Vertex v : H.right_adj[j]) left[v].push_back(j);
    std::vector<std::uint32_t> in(N + 1, n);
    in[0] = 0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << N); ++mask) {
      std::set<Vertex> nb;
      for (std::uint32_t i = 0; i < N; ++i)
        if (mask >> i & 1) nb.insert(left[i].begin(), left[i].end());
      auto& b = in[std::popcount(mask)];
      b = std::min<std::uint32_t>(b, static_cast<std::uint32_t>(nb.size()));
    }
    const auto out = profile_by_masks(G);
    for (std::uint32_t m = 1; m <= N; ++m) CHECK(out[m] >= in[m]);
  }
}

TEST_CASE("right regularization rejects irregular input") {
  BipartiteAdjacency H{3, {{0, 1}, {0}}};
  CHECK_THROWS_AS(right_regularize(H), ParameterError);
}

TEST_CASE("brute-force profile matches subset masks") {
  CounterRng rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const BipartiteGraph G = right_regularize(random_left_regular(rng, 10, 6, 2));
    const ProfileBound bf = bruteforce_profile(G);
    const auto masks = profile_by_masks(G);
    for (std::uint32_t s = 1; s <= G.N; ++s) {
      // Lambda(m) minimizes over every subset of size at least m.
      std::uint32_t suffix = G.n;
      for (std::uint32_t u = s; u <= G.N; ++u) suffix = std::min(suffix, masks[u]);
      CHECK(bf.evaluate(s) == suffix);
      CHECK(profile_bruteforce(G, s) == masks[s]);
    }
  }
  const BipartiteGraph big = edge_vertex_incidence(cycle_graph(30));
  CHECK_THROWS_AS(bruteforce_profile(big), GuardError);
}

TEST_CASE("profile bounds never exceed the exact profile") {
  for (std::uint64_t N : {20, 27}) {
    const Expander e = build_sum_product(N);
    const ProfileBound bf = bruteforce_profile(e.graph, 27);
    for (std::uint32_t m = 1; m <= e.graph.N; ++m) {
      CHECK(e.profile.evaluate(m) <= bf.evaluate(m));
      CHECK(trivial_profile(e.graph).evaluate(m) <= bf.evaluate(m));
    }
  }
}

TEST_CASE("sum-product graph shape") {
  const Expander e = build_sum_product(27);
  CHECK(e.graph.N == 27);
  CHECK(to_graph_string(e.graph).rfind("GRAPH 27 12 8 9\n", 0) == 0);
  const BipartiteAdjacency raw = sum_product_raw(3);
  CHECK(raw.N == 27);
  for (auto deg : raw.left_degrees()) CHECK(deg == 4);
}

TEST_CASE("spectral expander") {
  const Expander e = build_spectral_expander(500, 14);
  e.graph.validate();
  CHECK(e.graph.N == 500);
  CHECK(e.profile.provenance() == Provenance::proved_arithmetic);
  for (double m : {1.0, 10.0, 100.0, 500.0}) CHECK(e.profile.evaluate(m) <= e.graph.n);
}
