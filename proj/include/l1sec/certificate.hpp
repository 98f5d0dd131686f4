#pragma once

// Spread certificates (t, T, eps): for every x in X,
//   min_{|S|<=T} |x_{S^c}|_2 >= eps * min_{|S|<=t} |x_{S^c}|_2.
// An absolute (t, eps)-spread claim is stored as (0, t, eps).

#include <span>
#include <string>
#include <vector>

namespace l1sec {

// Ordered weakest to strongest.
enum class Provenance { sampled, assumed_constant, exact_oracle, proved_arithmetic };

const char* to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);
Provenance weakest(Provenance a, Provenance b);

struct SpreadCertificate {
  double t = 0.0;
  double T = 0.0;
  double eps = 1.0;
  Provenance provenance = Provenance::proved_arithmetic;
  std::vector<std::string> trail;

  SpreadCertificate() = default;
  SpreadCertificate(double t, double T, double eps, Provenance prov,
                    std::vector<std::string> trail = {});

  static SpreadCertificate absolute(double t, double eps, Provenance prov,
                                    std::string note);

  // (t, eps) form: the lower size is below one coordinate.
  bool anchored() const { return t <= 0.5; }
  bool operator==(const SpreadCertificate&) const = default;
};

struct DistortionUpper {
  double value;
  std::vector<std::string> trail;
};

// Delta(X) <= sqrt(N / t) * eps^-2 for an anchored (t, eps) certificate.
DistortionUpper spread_to_distortion(const SpreadCertificate& cert, double N);

// X is (N / (2 Delta^2), 1 / (4 Delta))-spread.
SpreadCertificate distortion_to_spread(double delta, double N);

// Chains (t0,T1,e1), (t1,T2,e2), ... with T_i >= t_{i+1} into
// (t0, T_last, prod e_i). Throws on an empty list or a broken chain.
SpreadCertificate compose_certificates(std::span<const SpreadCertificate> chain);

// Inner (t, eps)-spread space pushed through a graph of left degree D whose
// profile at T0 is `lambda_at_T0`: (T0, (t / D) * lambda, eps / sqrt(2 D)).
struct PushdownResult {
  SpreadCertificate cert;
  bool useful;  // T > T0
};
PushdownResult pushdown_certificate(double lambda_at_T0, Provenance profile_prov,
                                    const std::string& profile_note,
                                    const SpreadCertificate& inner, double D,
                                    double T0);

std::string format_trail(const std::vector<std::string>& trail);

}  // namespace l1sec
