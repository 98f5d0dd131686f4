#include <doctest.h>

#include <Eigen/QR>

#include "l1sec/expanders.hpp"
#include "l1sec/kernels.hpp"
#include "l1sec/rng.hpp"

using namespace l1sec;

namespace {

Eigen::MatrixXd random_orthonormal(std::uint64_t seed, int N, int dim) {
  CounterRng rng(seed);
  Eigen::MatrixXd M(N, dim);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < dim; ++j) M(i, j) = rng.uniform() - 0.5;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
  return qr.householderQ() * Eigen::MatrixXd::Identity(N, dim);
}

}  // namespace

TEST_CASE("profile table: OpenMP matches serial") {
  for (std::uint32_t n : {5U, 8U, 11U}) {
    const BipartiteGraph g = edge_vertex_incidence(cycle_graph(n));
    CHECK(kernels::profile_table_omp(g) == kernels::profile_table_serial(g));
  }
  const BipartiteGraph sp = build_sum_product(27).graph;
  CHECK(kernels::profile_table_omp(sp) == kernels::profile_table_serial(sp));
}

TEST_CASE("cycle incidence profile has the closed form") {
  // s edges of an n-cycle touch at least s + 1 vertices unless s = n.
  const BipartiteGraph g = edge_vertex_incidence(cycle_graph(9));
  const auto t = kernels::profile_table_serial(g);
  CHECK(t[0] == 0);
  for (std::uint32_t s = 1; s < 9; ++s) CHECK(t[s] == s + 1);
  CHECK(t[9] == 9);
}

TEST_CASE("principal eigenvalue: OpenMP matches serial") {
  for (int s : {1, 2, 3}) {
    const Eigen::MatrixXd B = random_orthonormal(17 + s, 24, 10);
    const double a = kernels::max_principal_eig_serial(B, s);
    CHECK(kernels::max_principal_eig_omp(B, s) == doctest::Approx(a).epsilon(1e-12));
    const double sa = kernels::sampled_principal_eig_serial(B, s, 300, 4);
    CHECK(kernels::sampled_principal_eig_omp(B, s, 300, 4) == doctest::Approx(sa).epsilon(1e-12));
    CHECK(sa <= a + 1e-12);
  }
}

TEST_CASE("single-row principal eigenvalue is the largest squared row norm") {
  const Eigen::MatrixXd B = random_orthonormal(3, 15, 6);
  CHECK(kernels::max_principal_eig_serial(B, 1) ==
        doctest::Approx(B.rowwise().squaredNorm().maxCoeff()));
}

TEST_CASE("binomial coefficients") {
  CHECK(kernels::binomial(10, 3) == 120);
  CHECK(kernels::binomial(5, 7) == 0);
  CHECK(kernels::binomial(60, 30) == 118264581564861424ULL);
  CHECK(kernels::binomial(200, 100) == UINT64_MAX);
}
