#include <doctest.h>

#include <cmath>

#include "l1sec/certificate.hpp"
#include "l1sec/rng.hpp"

using namespace l1sec;

TEST_CASE("spread to distortion and back, recomputed from the formulas") {
  CounterRng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double N = 16 + static_cast<double>(rng.below(100000));
    const double t = 1 + rng.uniform() * (N - 1);
    const double eps = 0.01 + 0.99 * rng.uniform();
    const auto up = spread_to_distortion(SpreadCertificate::absolute(t, eps, Provenance::exact_oracle, "x"), N);
    CHECK(up.value == doctest::Approx(std::sqrt(N / t) / (eps * eps)).epsilon(1e-12));
    CHECK_FALSE(up.trail.empty());

    const double delta = 1 + rng.uniform() * 50;
    const auto c = distortion_to_spread(delta, N);
    CHECK(c.t == 0.0);
    CHECK(c.T == doctest::Approx(N / (2 * delta * delta)).epsilon(1e-12));
    CHECK(c.eps == doctest::Approx(1 / (4 * delta)).epsilon(1e-12));
  }
}

TEST_CASE("pushdown arithmetic") {
  CounterRng rng(2);
  for (int i = 0; i < 1000; ++i) {
    const double t = 1 + rng.uniform() * 20;
    const double eps = 0.05 + 0.9 * rng.uniform();
    const double D = 2 + static_cast<double>(rng.below(10));
    const double lambda = 1 + rng.uniform() * 200;
    const double T0 = 0.5 + rng.uniform() * 10;
    const auto inner = SpreadCertificate::absolute(t, eps, Provenance::proved_arithmetic, "inner");
    const auto r = pushdown_certificate(lambda, Provenance::exact_oracle, "profile", inner, D, T0);
    CHECK(r.cert.t == T0);
    CHECK(r.cert.T == doctest::Approx(std::max(T0, t / D * lambda)).epsilon(1e-12));
    CHECK(r.cert.eps == doctest::Approx(eps / std::sqrt(2 * D)).epsilon(1e-12));
    CHECK(r.cert.provenance == Provenance::exact_oracle);
    CHECK(r.useful == (t / D * lambda > T0));
  }
}

TEST_CASE("composition multiplies eps along a valid chain") {
  CounterRng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const int len = 1 + static_cast<int>(rng.below(5));
    std::vector<SpreadCertificate> chain;
    double t = 0, prod = 1;
    for (int j = 0; j < len; ++j) {
      const double T = t + 1 + rng.uniform() * 10;
      const double e = 0.1 + 0.9 * rng.uniform();
      chain.emplace_back(t, T, e, j == 2 ? Provenance::sampled : Provenance::proved_arithmetic);
      prod *= e;
      t = T - rng.uniform();  // next lower size never exceeds this upper size
    }
    const auto c = compose_certificates(chain);
    CHECK(c.t == chain.front().t);
    CHECK(c.T == chain.back().T);
    CHECK(c.eps == doctest::Approx(prod).epsilon(1e-12));
    CHECK(c.provenance == (len > 2 ? Provenance::sampled : Provenance::proved_arithmetic));
  }
}

TEST_CASE("broken chains are rejected") {
  std::vector<SpreadCertificate> empty;
  CHECK_THROWS(compose_certificates(empty));
  std::vector<SpreadCertificate> gap{{0, 4, 0.5, Provenance::exact_oracle},
                                     {5, 9, 0.5, Provenance::exact_oracle}};
  CHECK_THROWS(compose_certificates(gap));
}

TEST_CASE("provenance ordering and names") {
  CHECK(weakest(Provenance::proved_arithmetic, Provenance::sampled) == Provenance::sampled);
  CHECK(weakest(Provenance::exact_oracle, Provenance::assumed_constant) ==
        Provenance::assumed_constant);
  for (auto p : {Provenance::sampled, Provenance::assumed_constant, Provenance::exact_oracle,
                 Provenance::proved_arithmetic})
    CHECK(provenance_from_string(to_string(p)) == p);
}
