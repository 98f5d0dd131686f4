#include "l1sec/certificate.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "l1sec/errors.hpp"

namespace l1sec {

namespace {
std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}
}  // namespace

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::sampled: return "sampled";
    case Provenance::assumed_constant: return "assumed-constant";
    case Provenance::exact_oracle: return "exact-oracle";
    case Provenance::proved_arithmetic: return "proved-arithmetic";
  }
  return "?";
}

Provenance provenance_from_string(const std::string& s) {
  for (auto p : {Provenance::sampled, Provenance::assumed_constant,
                 Provenance::exact_oracle, Provenance::proved_arithmetic})
    if (s == to_string(p)) return p;
  throw std::invalid_argument("unknown provenance '" + s + "'");
}

Provenance weakest(Provenance a, Provenance b) { return a < b ? a : b; }

SpreadCertificate::SpreadCertificate(double t_, double T_, double eps_,
                                     Provenance prov,
                                     std::vector<std::string> trail_)
    : t(t_), T(T_), eps(eps_), provenance(prov), trail(std::move(trail_)) {
  if (!(eps > 0.0 && eps <= 1.0))
    throw std::invalid_argument("certificate eps must lie in (0, 1]");
  if (!(t >= 0.0 && t <= T))
    throw std::invalid_argument("certificate needs 0 <= t <= T");
}

SpreadCertificate SpreadCertificate::absolute(double t, double eps,
                                              Provenance prov, std::string note) {
  return SpreadCertificate(0.0, t, eps, prov, {std::move(note)});
}

DistortionUpper spread_to_distortion(const SpreadCertificate& cert, double N) {
  if (!cert.anchored())
    throw std::invalid_argument("spread_to_distortion needs an anchored (t, eps) certificate");
  if (cert.T <= 0.0) throw std::invalid_argument("certificate size must be positive");
  const double value = std::sqrt(N / cert.T) / (cert.eps * cert.eps);
  auto trail = cert.trail;
  trail.push_back("distortion <= sqrt(N/t)/eps^2 = " + fmt(value));
  return {value, std::move(trail)};
}

SpreadCertificate distortion_to_spread(double delta, double N) {
  if (!(delta >= 1.0)) throw std::invalid_argument("distortion is at least 1");
  const double t = N / (2.0 * delta * delta);
  return SpreadCertificate(0.0, t, 1.0 / (4.0 * delta),
                           Provenance::proved_arithmetic,
                           {"from distortion " + fmt(delta) + ": (" + fmt(t) +
                            ", " + fmt(1.0 / (4.0 * delta)) + ")-spread"});
}

SpreadCertificate compose_certificates(std::span<const SpreadCertificate> chain) {
  if (chain.empty()) throw std::invalid_argument("cannot compose an empty chain");
  SpreadCertificate out = chain.front();
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const auto& c = chain[i];
    // Relative tolerance absorbs rounding in the schedule arithmetic.
    if (out.T < c.t * (1.0 - 1e-12))
      throw std::invalid_argument("broken certificate chain at link " +
                                  std::to_string(i) + ": T=" + fmt(out.T) +
                                  " < next t=" + fmt(c.t));
    if (c.t < chain[i - 1].t)
      throw std::invalid_argument("certificate lower sizes must be nondecreasing");
    out.T = c.T;
    out.eps *= c.eps;
    out.provenance = weakest(out.provenance, c.provenance);
    out.trail.insert(out.trail.end(), c.trail.begin(), c.trail.end());
  }
  if (chain.size() > 1)
    out.trail.push_back("composed " + std::to_string(chain.size()) +
                        " links: (" + fmt(out.t) + ", " + fmt(out.T) + ", " +
                        fmt(out.eps) + ")");
  return out;
}

PushdownResult pushdown_certificate(double lambda_at_T0, Provenance profile_prov,
                                    const std::string& profile_note,
                                    const SpreadCertificate& inner, double D,
                                    double T0) {
  if (!inner.anchored())
    throw std::invalid_argument("pushdown needs an anchored inner certificate");
  if (!(D >= 1.0)) throw std::invalid_argument("left degree must be >= 1");
  if (!(T0 > 0.0)) throw std::invalid_argument("T0 must be positive");
  const double T = inner.T / D * lambda_at_T0;
  const double eps = inner.eps / std::sqrt(2.0 * D);
  const bool useful = T > T0;
  auto trail = inner.trail;
  trail.push_back("pushdown[" + profile_note + "] T0=" + fmt(T0) +
                  " Lambda=" + fmt(lambda_at_T0) + " D=" + fmt(D) + " -> (" +
                  fmt(T0) + ", " + fmt(T) + ", " + fmt(eps) + ")" +
                  (useful ? "" : " (not useful: T <= T0)"));
  SpreadCertificate cert(T0, T < T0 ? T0 : T, eps,
                         weakest(inner.provenance, profile_prov),
                         std::move(trail));
  return {std::move(cert), useful};
}

std::string format_trail(const std::vector<std::string>& trail) {
  std::string s;
  for (std::size_t i = 0; i < trail.size(); ++i) {
    if (i) s += " | ";
    s += trail[i];
  }
  return s;
}

}  // namespace l1sec
