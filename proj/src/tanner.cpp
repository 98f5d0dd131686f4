#include "l1sec/tanner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "l1sec/algebra.hpp"
#include "l1sec/analysis.hpp"
#include "l1sec/errors.hpp"
#include "l1sec/kerdock.hpp"
#include "l1sec/kernels.hpp"
#include "l1sec/rng.hpp"

namespace l1sec {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double distortion_bound(const SpreadCertificate& c, double N) {
  if (c.T <= 0) return std::numeric_limits<double>::infinity();
  return std::sqrt(N / c.T) / (c.eps * c.eps);
}

SpreadCertificate trivial_certificate(const std::string& why) {
  return SpreadCertificate::absolute(0.0, 1.0, Provenance::proved_arithmetic,
                                     "trivial certificate: " + why);
}

std::uint64_t lps_vertex_count(std::uint64_t p, std::uint64_t q) {
  const std::uint64_t group = q * (q * q - 1);
  return legendre_symbol(static_cast<std::int64_t>(p), static_cast<std::int64_t>(q)) == 1
             ? group / 2
             : group;
}

struct SpectralChoice {
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  std::uint64_t vertices = 0;
  std::uint32_t d = 0;  // predicted right degree after trimming to N
};

// Parameters of build_spectral_expander(N, p + 1) without building it.
std::optional<SpectralChoice> predict_spectral(std::uint64_t N, std::uint64_t p,
                                               std::uint64_t cap) {
  PrimePair pq;
  try {
    pq = find_prime_pq(p + 1, N);
  } catch (const ParameterError&) {
    return std::nullopt;
  }
  if (pq.p != p) return std::nullopt;
  const std::uint64_t v = lps_vertex_count(pq.p, pq.q);
  if (v > cap || v * (p + 1) / 2 < N) return std::nullopt;
  return SpectralChoice{pq.p, pq.q, v,
                        static_cast<std::uint32_t>((2 * N + v - 1) / v)};
}

// Primes p = 1 mod 4 whose LPS graph could fit under `cap` vertices.
std::vector<std::uint64_t> lps_degree_primes(std::uint64_t cap, std::uint64_t p_limit) {
  std::uint64_t q_max = 5;
  while ((q_max + 4) * ((q_max + 4) * (q_max + 4) - 1) / 2 <= cap) q_max += 4;
  const std::uint64_t p_max = std::min(p_limit, q_max * q_max / 4 + 1);
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p = 5; p <= p_max; p += 4)
    if (is_prime(p)) ps.push_back(p);
  return ps;
}

}  // namespace

SignCheckMatrix tanner_check_matrix(const BipartiteGraph& G,
                                    const SignCheckMatrix& inner,
                                    const std::string& label) {
  if (inner.cols() != G.d)
    throw ParameterError("inner check has " + std::to_string(inner.cols()) +
                         " columns but the graph has right degree " +
                         std::to_string(G.d));
  const std::size_t k = inner.rows();
  std::vector<SignEntry> entries;
  entries.reserve(static_cast<std::size_t>(G.n) * inner.nnz());
  for (std::uint32_t j = 0; j < G.n; ++j) {
    const auto& nb = G.right_adj[j];
    for (const auto& e : inner.entries())
      entries.push_back({static_cast<std::uint32_t>(j * k + e.row), nb[e.col], e.sign});
  }
  const std::size_t rows = G.n * k;
  std::vector<RowBlock> blocks;
  if (rows > 0) blocks.push_back({0, rows, label});
  return SignCheckMatrix(rows, G.N, std::move(entries), std::move(blocks));
}

SpreadCertificate iterate_pushdown(const ProfileBound& profile,
                                   const SpreadCertificate& inner, double D,
                                   double N, int max_steps) {
  std::vector<SpreadCertificate> chain;
  double T0 = 0.5;
  for (int step = 0; step < max_steps; ++step) {
    auto res = pushdown_certificate(profile, inner, D, T0);
    if (!res.useful) break;
    chain.push_back(res.cert);
    if (res.cert.T >= N) break;
    T0 = res.cert.T;
  }
  if (chain.empty()) return trivial_certificate("pushdown never increases T");
  SpreadCertificate best;
  double best_bound = std::numeric_limits<double>::infinity();
  for (std::size_t len = 1; len <= chain.size(); ++len) {
    auto c = compose_certificates(std::span(chain.data(), len));
    const double b = distortion_bound(c, N);
    if (b < best_bound) {
      best_bound = b;
      best = std::move(c);
    }
  }
  return best;
}

BoostResult boost_sum_product(std::uint64_t N, double eta, const AssemblyOptions& opt) {
  if (!(eta > 0 && eta <= 1)) throw ParameterError("eta must lie in (0, 1]");
  const double guard = std::pow(static_cast<double>(N), -2.0 * opt.beta0 / 3.0);
  if (eta < guard)
    throw ParameterError("eta=" + num(eta) + " below guard N^(-2 beta0/3)=" + num(guard));
  Expander sp = build_sum_product(N, opt.xi0);
  const std::uint32_t d = sp.graph.d;

  std::uint32_t k = 0;
  for (std::uint64_t c = 4; c <= d; c *= 4)
    if (c <= eta * d / 8.0 && d <= max_columns(static_cast<std::uint32_t>(c)))
      k = static_cast<std::uint32_t>(c);
  if (k == 0)
    throw ParameterError("infeasible parameters at this scale: N=" + std::to_string(N) +
                         " eta=" + num(eta) + " gives d=" + std::to_string(d) +
                         ", no power of 4 k with d^(2/3) <= k <= eta d/8");

  LocalSubspace inner = local_subspace(k, d);
  std::string label = sp.label + " inner=kerdock k=" + std::to_string(k) +
                      " d=" + std::to_string(d);
  SignCheckMatrix check = tanner_check_matrix(sp.graph, inner.check, label);
  if (check.rows() > eta * N)
    throw std::logic_error("boost_sum_product exceeded its row budget");
  SpreadCertificate cert =
      iterate_pushdown(sp.profile, inner.cert, sp.graph.D, static_cast<double>(N),
                       std::max(1, static_cast<int>(std::ceil(1.0 / opt.beta0))));
  return {std::move(check), std::move(cert), k, d, sp.graph.n,
          smallest_prime_cube_at_least(N)};
}

AssemblySchedule compute_schedule(std::uint64_t N, double eta, const AssemblyOptions& opt) {
  if (N < opt.min_N)
    throw ParameterError("N=" + std::to_string(N) + " below the minimum " +
                         std::to_string(opt.min_N));
  if (!(eta > 0 && eta <= 1)) throw ParameterError("eta must lie in (0, 1]");
  if (!(opt.beta0 > 0 && opt.beta0 < 1)) throw ParameterError("beta0 must lie in (0, 1)");
  if (!(opt.eps > 0 && opt.eps < 1)) throw ParameterError("eps must lie in (0, 1)");
  if (!(opt.delta > 0 && opt.delta < 1)) throw ParameterError("delta must lie in (0, 1)");

  AssemblySchedule s;
  s.N = N;
  s.eta = eta;
  s.beta0 = opt.beta0;
  s.eps = opt.eps;
  s.delta = opt.delta;
  const double n = static_cast<double>(N);
  s.loglog = std::max(std::log(std::log(n)), 1.0);
  s.eta_tilde = eta / (s.loglog * s.loglog);
  s.stop_at = opt.delta * std::pow(s.eta_tilde, 2.0 * opt.beta0 / 3.0) * n;
  for (int i = 0;; ++i) {
    const double t = n * std::pow(opt.eps / n, std::pow(1.0 - opt.beta0, i));
    s.t.push_back(t);
    if (t >= s.stop_at) {
      s.r = i;
      break;
    }
    if (i > 100000) throw std::logic_error("schedule does not terminate");
  }
  return s;
}

namespace {

struct InnerSpace {
  SignCheckMatrix check;
  SpreadCertificate cert;
  std::string label;
};

// Best anchored chain through the candidate certificates of one subspace.
SpreadCertificate best_chain(std::vector<SpreadCertificate> cands, double N) {
  std::sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
    return a.T != b.T ? a.T < b.T : a.t < b.t;
  });
  const std::size_t m = cands.size();
  std::vector<double> val(m, 0.0);
  std::vector<int> prev(m, -1);
  for (std::size_t c = 0; c < m; ++c) {
    if (cands[c].anchored()) val[c] = cands[c].eps;
    for (std::size_t a = 0; a < c; ++a) {
      if (val[a] <= 0 || cands[a].T < cands[c].t || cands[a].t > cands[c].t ||
          cands[a].T >= cands[c].T)
        continue;
      const double v = val[a] * cands[c].eps;
      if (v > val[c]) {
        val[c] = v;
        prev[c] = static_cast<int>(a);
      }
    }
  }
  int best = -1;
  double best_bound = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < m; ++c) {
    if (val[c] <= 0 || cands[c].T <= 0.5) continue;
    const double b = std::sqrt(N / cands[c].T) / (val[c] * val[c]);
    if (b < best_bound) {
      best_bound = b;
      best = static_cast<int>(c);
    }
  }
  if (best < 0) return trivial_certificate("no anchored chain of level certificates");
  std::vector<SpreadCertificate> chain;
  for (int c = best; c >= 0; c = prev[c]) chain.push_back(cands[c]);
  std::reverse(chain.begin(), chain.end());
  return compose_certificates(chain);
}

}  // namespace

Theorem1Result assemble_theorem1(std::uint64_t N, double eta, const AssemblyOptions& opt) {
  AssemblySchedule sched = compute_schedule(N, eta, opt);
  if (sched.r == 0) throw ParameterError("schedule has no levels at this N");
  const std::uint64_t cap = opt.lps_cap_factor * N;
  const auto primes = lps_degree_primes(cap, std::numeric_limits<std::uint64_t>::max());
  sched.notes.push_back("loglog=max(ln ln N,1)=" + num(sched.loglog) +
                        " eta_tilde=" + num(sched.eta_tilde) + " stop_at=" +
                        num(sched.stop_at) + " lps_cap=" + std::to_string(cap));

  // Pass 1: graph parameters per level; equal parameters give equal levels.
  std::vector<SpectralChoice> choice(sched.r);
  std::map<std::pair<std::uint64_t, std::uint64_t>, int> first_level;
  int distinct = 0;
  for (int i = 0; i < sched.r; ++i) {
    LevelPlan lp;
    lp.index = i;
    lp.t = sched.t[i];
    lp.d_target = static_cast<double>(N) / sched.t[i];
    // Largest realized degree not above the target; smaller graphs break ties.
    std::optional<SpectralChoice> pick;
    for (std::uint64_t p : primes) {
      if (static_cast<double>(p + 1) > std::max(lp.d_target, 6.0)) break;
      auto c = predict_spectral(N, p, cap);
      if (c && (!pick || c->d > pick->d ||
                (c->d == pick->d && c->vertices < pick->vertices)))
        pick = c;
    }
    if (!pick)
      throw ParameterError("level " + std::to_string(i) + " (t=" + num(lp.t) +
                           ", d_target=" + num(lp.d_target) +
                           "): no LPS graph with at most " + std::to_string(cap) +
                           " vertices covers N=" + std::to_string(N));
    choice[i] = *pick;
    auto [it, fresh] = first_level.try_emplace({pick->p, pick->q}, i);
    if (fresh)
      ++distinct;
    else
      lp.same_as = it->second;
    sched.levels.push_back(std::move(lp));
  }
  const auto budget =
      static_cast<std::uint64_t>(std::floor(eta * static_cast<double>(N) / distinct));

  // Pass 2: realize distinct levels.
  std::vector<SignCheckMatrix> parts;
  std::vector<SpreadCertificate> cands;
  std::map<int, std::pair<Expander, InnerSpace>> realized;
  for (auto& lp : sched.levels) {
    const SpectralChoice& sc = choice[lp.index];
    if (lp.same_as < 0) {
      Expander ex = build_spectral_expander(N, sc.p + 1, cap);
      const std::uint32_t d = ex.graph.d, n = ex.graph.n;
      std::optional<InnerSpace> inner;
      std::string why;
      try {
        BoostResult b = boost_sum_product(d, sched.eta_tilde, opt);
        if (static_cast<std::uint64_t>(n) * b.check.rows() <= budget)
          inner = InnerSpace{std::move(b.check), std::move(b.cert),
                             "boost-sum-product k=" + std::to_string(b.k) +
                                 " d=" + std::to_string(b.d) + " n=" + std::to_string(b.n)};
        else
          why = "boosted inner space exceeds the level row budget";
      } catch (const ParameterError& e) {
        why = e.what();
      }
      if (!inner) {
        std::uint32_t k = 0;
        for (std::uint64_t c = 4; c < d; c *= 4)
          if (d <= max_columns(static_cast<std::uint32_t>(c)) &&
              static_cast<std::uint64_t>(n) * c <= budget)
            k = static_cast<std::uint32_t>(c);
        if (k == 0)
          throw ParameterError(
              "level " + std::to_string(lp.index) + " (t=" + num(lp.t) + ", " +
              ex.label + "): no inner space fits; boost: " + why +
              "; kerdock-direct needs a power of 4 k < d <= k^(3/2) with n*k <= " +
              std::to_string(budget));
        LocalSubspace ls = local_subspace(k, d);
        inner = InnerSpace{std::move(ls.check), std::move(ls.cert),
                           "kerdock-direct k=" + std::to_string(k) + " d=" +
                               std::to_string(d) + " (boost: " + why + ")"};
      }
      lp.d = d;
      lp.n = n;
      lp.graph = ex.label;
      lp.inner = inner->label;
      std::string label = "level " + std::to_string(lp.index) + ": t_" +
                          std::to_string(lp.index) + "=" + num(lp.t) + " graph=" +
                          ex.label + " inner=" + inner->label;
      parts.push_back(tanner_check_matrix(ex.graph, inner->check, label));
      lp.rows = parts.back().rows();
      const SpreadCertificate it = iterate_pushdown(
          ex.profile, inner->cert, ex.graph.D, static_cast<double>(N), opt.max_pushdown_steps);
      if (it.T > 0.5) cands.push_back(it);
      realized.emplace(lp.index, std::make_pair(std::move(ex), std::move(*inner)));
    } else {
      const LevelPlan& src = sched.levels[lp.same_as];
      lp.d = src.d;
      lp.n = src.n;
      lp.graph = src.graph;
      lp.inner = src.inner;
    }
    const auto& [ex, inner] = realized.at(lp.same_as < 0 ? lp.index : lp.same_as);
    auto res = pushdown_certificate(ex.profile, inner.cert, ex.graph.D, lp.t);
    lp.cert = res.cert;
    if (res.useful) cands.push_back(res.cert);
  }

  SignCheckMatrix check = SignCheckMatrix::stack(parts);
  if (check.rows() > eta * static_cast<double>(N))
    throw std::logic_error("explicit assembly exceeded eta N rows");
  SpreadCertificate cert = best_chain(std::move(cands), static_cast<double>(N));
  return {std::move(check), std::move(sched), std::move(cert)};
}

Theorem2Result assemble_theorem2(std::uint64_t N, double eta, std::uint64_t seed,
                                 const AssemblyOptions& opt) {
  if (N < opt.min_N)
    throw ParameterError("N=" + std::to_string(N) + " below the minimum " +
                         std::to_string(opt.min_N));
  if (!(eta > 0 && eta <= 1)) throw ParameterError("eta must lie in (0, 1]");
  const double n = static_cast<double>(N);
  const double loglog = std::max(std::log(std::log(n)), 1.0);
  const double d_goal = std::pow(n, 1.0 / (2.0 * loglog));
  const std::uint64_t cap = opt.lps_cap_factor * N;

  std::optional<SpectralChoice> pick;
  for (std::uint64_t p : lps_degree_primes(cap, std::numeric_limits<std::uint64_t>::max())) {
    auto c = predict_spectral(N, p, cap);
    if (!c || std::floor(eta * c->d / 4.0) < 1) continue;
    if (!pick || std::abs(c->d - d_goal) < std::abs(pick->d - d_goal)) pick = c;
  }
  if (!pick)
    throw ParameterError("infeasible d window: no spectral graph at N=" +
                         std::to_string(N) + " has k = floor(eta d/4) >= 1");

  Expander ex = build_spectral_expander(N, pick->p + 1, cap);
  const std::uint32_t d = ex.graph.d;
  if (d != pick->d) throw std::logic_error("spectral degree prediction failed");
  const auto k = static_cast<std::uint32_t>(std::floor(eta * d / 4.0));

  CounterRng rng(seed);
  std::vector<std::int8_t> signs(static_cast<std::size_t>(k) * d);
  for (auto& s : signs) s = rng.bit() ? -1 : 1;
  const std::string inner_label = "random signs k=" + std::to_string(k) +
                                  " d=" + std::to_string(d) +
                                  " seed=" + std::to_string(seed);
  const SignCheckMatrix A = SignCheckMatrix::from_dense(k, d, signs, inner_label);
  SignCheckMatrix check =
      tanner_check_matrix(ex.graph, A, ex.label + " inner=" + inner_label);
  if (check.rows() > eta * n) throw std::logic_error("seeded assembly exceeded eta N rows");

  // The random kernel is small enough for the exact oracle; try every t.
  const KernelBasis B = kernel_basis(A.to_dense());
  SpreadCertificate best = trivial_certificate("random inner space has no spread");
  double best_bound = std::numeric_limits<double>::infinity();
  for (std::uint32_t t = 1; t < d; ++t) {
    if (kernels::binomial(d, t) > kDefaultEnumBudget) break;
    const double eps = exact_spread(B, t) * (1 - 1e-9);
    if (eps <= 1e-9) break;
    const auto inner = SpreadCertificate::absolute(
        t, eps, Provenance::exact_oracle,
        "exact spread of random inner kernel t=" + std::to_string(t) + " eps=" + num(eps));
    auto c = iterate_pushdown(ex.profile, inner, ex.graph.D, n, opt.max_pushdown_steps);
    const double b = distortion_bound(c, n);
    if (c.T > 0.5 && b < best_bound) {
      best_bound = b;
      best = std::move(c);
    }
  }
  return {std::move(check), std::move(best), rng.bits_consumed(), k, d, ex.graph.n,
          ex.label, d_goal};
}

}  // namespace l1sec
