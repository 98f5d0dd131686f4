#include <doctest.h>

#include <cmath>

#include "l1sec/algebra.hpp"
#include "l1sec/rng.hpp"

using namespace l1sec;

TEST_CASE("field multiplication matches the carry-less oracle") {
  for (int m = 1; m <= 8; ++m) {
    Gf2mField F(m);
    CHECK(is_irreducible_gf2(F.modulus()));
    for (std::uint32_t a = 0; a < F.size(); ++a)
      for (std::uint32_t b = 0; b < F.size(); ++b)
        REQUIRE(F.mul(a, b) == gf2_poly_mulmod(a, b, F.modulus()));
  }
}

TEST_CASE("default moduli are irreducible for every supported degree") {
  for (int m = 1; m <= Gf2mField::kMaxDegree; ++m) {
    CHECK(is_irreducible_gf2(default_modulus(m)));
    CHECK((default_modulus(m) >> m) == 1U);
  }
  CHECK_FALSE(is_irreducible_gf2(0b101));  // x^2 + 1 = (x + 1)^2
  CHECK_THROWS(Gf2mField(2, 0b101));
}

TEST_CASE("field axioms on random triples") {
  CounterRng rng(7);
  for (int m : {3, 8, 12, 16}) {
    Gf2mField F(m);
    for (int i = 0; i < 2000; ++i) {
      const auto a = static_cast<std::uint32_t>(rng.below(F.size()));
      const auto b = static_cast<std::uint32_t>(rng.below(F.size()));
      const auto c = static_cast<std::uint32_t>(rng.below(F.size()));
      CHECK(F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c));
      CHECK(F.mul(a, b ^ c) == (F.mul(a, b) ^ F.mul(a, c)));
      CHECK(F.mul(a, b) == F.mul(b, a));
      CHECK(F.trace(a ^ b) == (F.trace(a) ^ F.trace(b)));
      CHECK(F.trace(a) <= 1U);
    }
  }
}

TEST_CASE("every nonzero element has an inverse") {
  Gf2mField F(6);
  for (std::uint32_t a = 1; a < F.size(); ++a) {
    int hits = 0;
    for (std::uint32_t b = 1; b < F.size(); ++b) hits += F.mul(a, b) == 1U;
    CHECK(hits == 1);
  }
}

TEST_CASE("trace is balanced") {
  for (int m = 1; m <= 10; ++m) {
    Gf2mField F(m);
    std::uint32_t ones = 0;
    for (std::uint32_t a = 0; a < F.size(); ++a) ones += F.trace(a);
    CHECK(ones == F.size() / 2);
  }
}

TEST_CASE("elements in different fields do not mix") {
  auto F = std::make_shared<const Gf2mField>(4);
  auto G = std::make_shared<const Gf2mField>(5);
  Gf2mElement x(F, 3), y(F, 7), z(G, 3);
  CHECK((x * y).bits() == F->mul(3, 7));
  CHECK((x + y).bits() == (3U ^ 7U));
  CHECK_THROWS(x * z);
}

TEST_CASE("fast Walsh transform matches direct summation") {
  CounterRng rng(11);
  for (int a = 1; a <= 10; ++a) {
    std::vector<std::uint8_t> t(std::size_t{1} << a);
    for (auto& v : t) v = rng.bit();
    BooleanFunction f(a, t);
    const auto fast = walsh_transform(f);
    CHECK(fast.coefficients == walsh_transform_direct(f).coefficients);
    CHECK(fast.parseval_sum() == std::int64_t{1} << (2 * a));
  }
}

TEST_CASE("bentness") {
  // x1 y1 + x2 y2: the inner-product function is bent.
  std::vector<std::uint8_t> t(16);
  for (std::uint32_t x = 0; x < 16; ++x)
    t[x] = static_cast<std::uint8_t>(((x & 1) & ((x >> 2) & 1)) ^ (((x >> 1) & 1) & ((x >> 3) & 1)));
  CHECK(is_bent(BooleanFunction(4, t)));
  CHECK_FALSE(is_bent(BooleanFunction::linear(4, 0b1010)));
  CHECK_FALSE(is_bent(BooleanFunction::zero(6)));
  CHECK_THROWS_AS(is_bent(BooleanFunction::zero(3)), std::invalid_argument);
}

TEST_CASE("truth-table hex round trip") {
  CounterRng rng(3);
  for (int a = 1; a <= 9; ++a) {
    std::vector<std::uint8_t> t(std::size_t{1} << a);
    for (auto& v : t) v = rng.bit();
    BooleanFunction f(a, t);
    CHECK(BooleanFunction::from_hex(a, f.to_hex()) == f);
  }
}

TEST_CASE("primes and quadratic residues") {
  std::vector<std::uint64_t> small;
  for (std::uint64_t n = 0; n < 60; ++n)
    if (is_prime(n)) small.push_back(n);
  CHECK(small == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37,
                                            41, 43, 47, 53, 59});
  CHECK(is_prime(1'000'000'007));
  CHECK_FALSE(is_prime(1'000'000'007ULL * 3));
  for (std::int64_t p : {5, 13, 17, 29}) {
    int residues = 0;
    for (std::int64_t a = 1; a < p; ++a) {
      bool square = false;
      for (std::int64_t b = 1; b < p; ++b) square |= (b * b) % p == a;
      CHECK(legendre_symbol(a, p) == (square ? 1 : -1));
      residues += square;
    }
    CHECK(residues == (p - 1) / 2);
    CHECK(legendre_symbol(p, p) == 0);
  }
}

TEST_CASE("prime pair search") {
  for (std::uint64_t d : {6, 14, 20, 40})
    for (std::uint64_t N : {100, 5000, 200000}) {
      const auto [p, q] = find_prime_pq(d, N);
      CHECK(is_prime(p));
      CHECK(is_prime(q));
      CHECK(p % 4 == 1);
      CHECK(q % 4 == 1);
      CHECK(p != q);
      CHECK(p <= d - 1);
      CHECK(static_cast<double>(q) > 2 * std::sqrt(static_cast<double>(p)));
      CHECK(q * (q * q - 1) * (p + 1) / 8 >= N);
    }
  CHECK(smallest_prime_cube_at_least(27) == 3);
  CHECK(smallest_prime_cube_at_least(28) == 5);
  CHECK(smallest_prime_cube_at_least(1) == 2);
}
