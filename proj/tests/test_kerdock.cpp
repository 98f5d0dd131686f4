#include <doctest.h>

#include <cmath>

#include "l1sec/errors.hpp"
#include "l1sec/analysis.hpp"
#include "l1sec/kerdock.hpp"

using namespace l1sec;

TEST_CASE("powers of four") {
  CHECK(is_power_of_four(1));
  CHECK(is_power_of_four(4));
  CHECK(is_power_of_four(256));
  CHECK_FALSE(is_power_of_four(8));
  CHECK_FALSE(is_power_of_four(0));
  CHECK_FALSE(is_power_of_four(12));
}

TEST_CASE("bent families: members and pairwise sums are bent") {
  for (std::uint32_t k : {4U, 16U, 64U}) {
    const BentFamily fam = build_bent_family(k);
    REQUIRE(fam.functions.size() == static_cast<std::size_t>(std::sqrt(k)) - 1);
    for (std::size_t i = 0; i < fam.functions.size(); ++i) {
      CHECK(is_bent(fam.functions[i]));
      for (std::size_t j = i + 1; j < fam.functions.size(); ++j)
        CHECK(is_bent(fam.functions[i] ^ fam.functions[j]));
    }
  }
}

TEST_CASE("MUB scaled inner products, recomputed independently") {
  for (std::uint32_t k : {4U, 16U, 64U}) {
    const MubSet mub = build_mub(k);
    CHECK(verify_mub_exact(mub));
    CHECK(mub.num_bases() == static_cast<std::size_t>(std::sqrt(k)));
    for (std::size_t b1 = 0; b1 < mub.num_bases(); ++b1)
      for (std::size_t b2 = b1; b2 < mub.num_bases(); ++b2)
        for (std::uint32_t a1 = 0; a1 < k; a1 += 3)
          for (std::uint32_t a2 = 0; a2 < k; a2 += 5) {
            std::int64_t ip = 0;
            for (std::uint32_t x = 0; x < k; ++x) ip += mub.sign(b1, a1, x) * mub.sign(b2, a2, x);
            if (b1 == b2)
              CHECK(ip == (a1 == a2 ? std::int64_t(k) : 0));
            else
              CHECK(ip * ip == std::int64_t(k));
          }
  }
}

TEST_CASE("a corrupted MUB fails the exact check") {
  MubSet mub = build_mub(16);
  mub.bases[1][5] = static_cast<std::int8_t>(-mub.bases[1][5]);
  CHECK_FALSE(verify_mub_exact(mub));
}

TEST_CASE("Kerdock matrix coherence and norm") {
  for (auto [k, d] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
           {4, 5}, {4, 8}, {16, 20}, {16, 40}, {16, 64}, {64, 100}, {64, 512}}) {
    const KerdockMatrix A = assemble_matrix(k, d);
    CHECK(A.signs.size() == std::size_t{k} * d);
    CHECK(max_scaled_coherence(A) * max_scaled_coherence(A) <= std::int64_t(k));
    const double bound = std::sqrt(std::ceil(double(d) / k));
    CHECK(operator_norm_estimate(A) <= bound + 1e-9);
  }
  CHECK(max_columns(16) == 64);
  CHECK_THROWS_AS(assemble_matrix(16, 65), ParameterError);
  CHECK_THROWS_AS(assemble_matrix(12, 20), ParameterError);
}

TEST_CASE("local subspace certificate holds on small instances") {
  for (std::uint32_t d : {20U, 32U}) {
    const LocalSubspace L = local_subspace(16, d);
    CHECK(L.check.rows() == 16);
    CHECK(L.check.cols() == d);
    CHECK(L.cert.t == 0.0);
    CHECK(L.cert.T == doctest::Approx(2.0));
    CHECK(L.cert.eps == doctest::Approx(0.25 * std::sqrt(16.0 / d)));
    const KernelBasis B = kernel_basis(L.check);
    CHECK(B.dim() == d - 16);
    CHECK(exact_spread(B, L.cert.T) >= L.cert.eps);
  }
  CHECK(local_subspace(16, 16).degenerate);
}
