#pragma once

// Mutually unbiased bases from cosets of the Hadamard code by quadratic bent
// functions, the k x d sign matrix built from them, and the inner spread
// subspace given by its kernel.

#include <cstdint>
#include <vector>

#include "l1sec/algebra.hpp"
#include "l1sec/certificate.hpp"
#include "l1sec/sign_matrix.hpp"

namespace l1sec {

bool is_power_of_four(std::uint64_t k);

struct BentFamily {
  std::uint32_t k = 0;  // 2^arity
  int arity = 0;
  std::vector<BooleanFunction> functions;
};

// f_c(u, v) = Tr(c * u * v) over GF(2^(a/2)), c != 0: sqrt(k) - 1 members.
// Bentness of every member and of every pairwise sum is verified before
// returning; a failed check throws std::logic_error.
BentFamily build_bent_family(std::uint32_t k);

struct MubSet {
  std::uint32_t k = 0;
  // Each basis is k x k row-major signs; row a is the vector
  // x -> (-1)^(f(x) + a.x), scaled by 1/sqrt(k) implicitly.
  std::vector<std::vector<std::int8_t>> bases;

  std::size_t num_bases() const { return bases.size(); }
  std::int8_t sign(std::size_t basis, std::uint32_t a, std::uint32_t x) const {
    return bases[basis][static_cast<std::size_t>(a) * k + x];
  }
};

MubSet build_mub(std::uint32_t k);

// Scaled-integer checks: k * B_i B_i^T = k * I and every entry of
// k * B_i B_j^T (i != j) squares to k.
bool verify_mub_exact(const MubSet& mub);

struct KerdockMatrix {
  std::uint32_t k = 0;
  std::uint32_t d = 0;
  std::vector<std::int8_t> signs;  // k x d row-major; entries are sqrt(k) * A

  std::int8_t at(std::uint32_t row, std::uint32_t col) const {
    return signs[static_cast<std::size_t>(row) * d + col];
  }
};

// Largest admissible column count for the family this build ships.
std::uint32_t max_columns(std::uint32_t k);

// A = [B_1 ... B_q | first r vectors of B_{q+1}] for d = q k + r.
KerdockMatrix assemble_matrix(const MubSet& mub, std::uint32_t d);
KerdockMatrix assemble_matrix(std::uint32_t k, std::uint32_t d);

// max_{i<j} |k <a_i, a_j>| computed in integers.
std::int64_t max_scaled_coherence(const KerdockMatrix& A);
// Power iteration on A^T A: 200 steps from the all-ones vector.
double operator_norm_estimate(const KerdockMatrix& A);

struct LocalSubspace {
  SignCheckMatrix check;  // k x d
  SpreadCertificate cert;  // (0, sqrt(k)/2, sqrt(k/d)/4)
  bool degenerate = false;  // d == k: the kernel is {0}
};

LocalSubspace local_subspace(std::uint32_t k, std::uint32_t d);

}  // namespace l1sec
