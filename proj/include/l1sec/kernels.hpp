#pragma once

// Hot loops with two implementations each: a plain serial reference and an
// OpenMP version. Integer kernels agree exactly; floating-point ones agree to
// rounding. Reductions are min/max, so thread count never changes a result.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "l1sec/expanders.hpp"

namespace l1sec::kernels {

// table[s] = min over |S| = s of |Gamma(S)|, s = 0..N.
// Serial: depth-first enumeration carrying the running union.
// OpenMP: split-table enumeration (low-half unions precomputed).
// Requires n <= 256.
std::vector<std::uint32_t> profile_table_serial(const BipartiteGraph& g);
std::vector<std::uint32_t> profile_table_omp(const BipartiteGraph& g);

// max over |S| = s of lambda_max(B_S B_S^T), B an N x dim matrix with
// orthonormal columns. sigma_min of B with rows S removed is
// sqrt(1 - this value).
double max_principal_eig_serial(const Eigen::MatrixXd& B, int s);
double max_principal_eig_omp(const Eigen::MatrixXd& B, int s);

// Same quantity maximized over `samples` random s-subsets; subset i is
// drawn from CounterRng(seed, i).
double sampled_principal_eig_serial(const Eigen::MatrixXd& B, int s,
                                    std::uint64_t samples, std::uint64_t seed);
double sampled_principal_eig_omp(const Eigen::MatrixXd& B, int s,
                                 std::uint64_t samples, std::uint64_t seed);

// C(n, k) saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace l1sec::kernels
