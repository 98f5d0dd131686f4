#pragma once

// Bipartite expanders: the LPS edge-vertex incidence family, the sum-product
// graph over F_p^3, right-regularization and expansion-profile bounds.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "l1sec/certificate.hpp"

namespace l1sec {

using Vertex = std::uint32_t;

// Simple undirected regular graph.
struct Graph {
  std::uint32_t vertices = 0;
  std::uint32_t degree = 0;
  std::vector<std::vector<Vertex>> adj;  // sorted

  // Symmetric, simple, loop-free and `degree`-regular; throws otherwise.
  void validate() const;
  std::uint64_t edge_count() const {
    return static_cast<std::uint64_t>(vertices) * degree / 2;
  }
};

Graph cycle_graph(std::uint32_t n);

// Bipartite graph given by right-vertex neighborhoods, not necessarily
// right-regular. Input to right_regularize.
struct BipartiteAdjacency {
  std::uint32_t N = 0;
  std::vector<std::vector<Vertex>> right_adj;

  std::vector<std::uint32_t> left_degrees() const;
};

// (N, n, D, d)-right regular graph.
struct BipartiteGraph {
  std::uint32_t N = 0;
  std::uint32_t n = 0;
  std::uint32_t D = 0;
  std::uint32_t d = 0;
  std::vector<std::vector<Vertex>> right_adj;  // each sorted, size d

  BipartiteGraph() = default;
  BipartiteGraph(std::uint32_t N, std::uint32_t D,
                 std::vector<std::vector<Vertex>> right_adj);

  void validate() const;
  std::vector<std::uint32_t> left_degrees() const;
  std::vector<std::vector<Vertex>> left_adj() const;
  bool operator==(const BipartiteGraph&) const = default;
};

void write_graph(std::ostream& out, const BipartiteGraph& g);
BipartiteGraph read_graph(std::istream& in);
std::string to_graph_string(const BipartiteGraph& g);

struct RegularizeStats {
  std::uint32_t clones = 0;
  std::uint64_t filler_edges = 0;
};

// Splits right vertices of degree above d = ceil(N D / n) into clones of
// degree d and pads each remainder clone with filler edges. Header D of the
// result is 2 D. Throws if H is not left-regular.
BipartiteGraph right_regularize(const BipartiteAdjacency& H,
                                RegularizeStats* stats = nullptr);

// Keeps left vertices [0, keep) and drops the rest.
BipartiteAdjacency delete_left_vertices(const BipartiteAdjacency& H,
                                        std::uint32_t keep);

// ------------------------------------------------------------------- LPS

struct LpsGraph {
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  bool bipartite = false;  // PGL_2(q) when (p|q) = -1
  Graph graph;
};

LpsGraph build_lps(std::uint64_t p, std::uint64_t q);

// Second largest eigenvalue (signed) of the adjacency matrix. Dense
// eigensolve up to 4000 vertices, fixed-seed Lanczos above.
double second_eigenvalue(const Graph& g);
double second_eigenvalue_lanczos(const Graph& g, int iterations = 500,
                                 std::uint64_t seed = 1);

// Left = edges of Y ordered by (u, v) with u < v; right = vertices of Y.
BipartiteAdjacency edge_vertex_incidence_raw(const Graph& Y);
BipartiteGraph edge_vertex_incidence(const Graph& Y);

bool alon_chung_check(const Graph& Y, double lambda2,
                      const std::vector<Vertex>& subset);

// --------------------------------------------------------- profile bounds

enum class ProfileKind { spectral, sumproduct, trivial, bruteforce };
const char* to_string(ProfileKind k);

// Lower bound on Lambda_G(m) = min{|Gamma(S)| : |S| >= m}.
struct ProfileBound {
  ProfileKind kind = ProfileKind::trivial;
  std::uint32_t N = 0;
  std::uint32_t n = 0;
  std::uint32_t d = 0;
  std::uint32_t min_left_degree = 0;
  // spectral: source graph Y (vertex count, degree) and lambda2 bound.
  double y_vertices = 0;
  double y_degree = 0;
  double y_lambda = 0;
  // sumproduct: optional assumed exponent gain.
  std::optional<double> xi0;
  // bruteforce: exact Lambda(s) for s = 0..N.
  std::vector<std::uint32_t> table;

  double evaluate(double m) const;
  Provenance provenance() const;
  std::string describe() const;
};

ProfileBound trivial_profile(const BipartiteGraph& g);
ProfileBound bruteforce_profile(const BipartiteGraph& g,
                                std::uint32_t max_left = 24);

// Exact Lambda(m) with |S| = ceil(m). Refuses N above `max_left`.
std::uint32_t profile_bruteforce(const BipartiteGraph& g, double m,
                                 std::uint32_t max_left = 24);

struct Expander {
  BipartiteGraph graph;
  ProfileBound profile;
  std::string label;
};

// LPS incidence graph trimmed to N left vertices and right-regularized.
// `max_lps_vertices` bounds the LPS graph size (0 = unbounded).
Expander build_spectral_expander(std::uint64_t N, std::uint64_t d,
                                 std::uint64_t max_lps_vertices = 0);

// Sum-product graph on F_p^3 for the smallest p with p^3 >= N.
BipartiteAdjacency sum_product_raw(std::uint64_t p);
Expander build_sum_product(std::uint64_t N,
                           std::optional<double> xi0 = std::nullopt);

}  // namespace l1sec
