#pragma once

// X(G, L) check matrices and the two top-level assemblies.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "l1sec/certificate.hpp"
#include "l1sec/expanders.hpp"
#include "l1sec/sign_matrix.hpp"

namespace l1sec {

// One copy of `inner` per right vertex j, placed on the columns Gamma(j);
// row j * inner.rows() + r carries inner row r.
SignCheckMatrix tanner_check_matrix(const BipartiteGraph& G,
                                    const SignCheckMatrix& inner,
                                    const std::string& label = "tanner");

struct AssemblyOptions {
  double beta0 = 0.05;
  double eps = 1.0 / 16;  // t_0
  double delta = 0.25;    // stopping constant
  std::optional<double> xi0;
  std::uint64_t min_N = 256;
  std::uint64_t lps_cap_factor = 8;  // LPS graphs limited to this many times N vertices
  int max_pushdown_steps = 200;
};

// Pushes `inner` through a graph repeatedly starting at T0 = 1/2 and keeps
// the prefix of the resulting chain with the smallest distortion bound.
SpreadCertificate iterate_pushdown(const ProfileBound& profile,
                                   const SpreadCertificate& inner, double D,
                                   double N, int max_steps);

struct BoostResult {
  SignCheckMatrix check;
  SpreadCertificate cert;
  std::uint32_t k = 0;
  std::uint32_t d = 0;
  std::uint32_t n = 0;
  std::uint64_t p = 0;
};

// Sum-product graph with a Kerdock inner space of size k x d, k the largest
// power of 4 with k <= eta d / 8 and d <= k^(3/2).
BoostResult boost_sum_product(std::uint64_t N, double eta,
                              const AssemblyOptions& opt = {});

struct LevelPlan {
  int index = 0;
  double t = 0;          // T0 of this level
  double d_target = 0;
  std::uint32_t d = 0;   // realized right degree
  std::uint32_t n = 0;
  std::uint64_t rows = 0;
  std::string graph;
  std::string inner;
  int same_as = -1;      // earlier level with the identical matrix
  std::optional<SpreadCertificate> cert;
};

struct AssemblySchedule {
  std::uint64_t N = 0;
  double eta = 0;
  double beta0 = 0;
  double eps = 0;
  double delta = 0;
  double loglog = 0;     // max(ln ln N, 1)
  double eta_tilde = 0;
  double stop_at = 0;    // delta * eta_tilde^(2 beta0 / 3) * N
  std::vector<double> t; // t_0 .. t_r
  int r = 0;
  std::vector<LevelPlan> levels;
  std::vector<std::string> notes;
};

// t_i = N (eps / N)^((1 - beta0)^i) until t_r >= stop_at.
AssemblySchedule compute_schedule(std::uint64_t N, double eta,
                                  const AssemblyOptions& opt = {});

struct Theorem1Result {
  SignCheckMatrix check;
  AssemblySchedule schedule;
  SpreadCertificate cert;
};

Theorem1Result assemble_theorem1(std::uint64_t N, double eta,
                                 const AssemblyOptions& opt = {});

struct Theorem2Result {
  SignCheckMatrix check;
  SpreadCertificate cert;
  std::uint64_t random_bits = 0;
  std::uint32_t k = 0;
  std::uint32_t d = 0;
  std::uint32_t n = 0;
  std::string graph;
  double d_goal = 0;  // N^(1 / (2 max(ln ln N, 1)))
};

Theorem2Result assemble_theorem2(std::uint64_t N, double eta, std::uint64_t seed,
                                 const AssemblyOptions& opt = {});

}  // namespace l1sec
