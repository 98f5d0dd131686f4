#include <algorithm>
#include <cmath>
#include <ostream>

#include "l1sec/rng.hpp"
#include "l1sec/sensing.hpp"

namespace l1sec {

RecoveryReport recovery_trial(const SparseRows& M, std::size_t s, double noise,
                              std::uint64_t seed, const BasisPursuitOptions& opt) {
  const auto N = static_cast<std::size_t>(M.cols());
  if (s > N) throw ParameterError("support size exceeds N");
  if (!(noise >= 0)) throw ParameterError("noise level must be nonnegative");
  CounterRng rng(seed);

  // Partial Fisher-Yates for the support.
  std::vector<std::size_t> idx(N);
  for (std::size_t i = 0; i < N; ++i) idx[i] = i;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(N));
  for (std::size_t i = 0; i < s; ++i) {
    const std::size_t j = i + rng.below(N - i);
    std::swap(idx[i], idx[j]);
    const double mag = 1.0 + rng.uniform();
    x(static_cast<Eigen::Index>(idx[i])) = rng.bit() ? -mag : mag;
  }
  if (noise > 0) {
    Eigen::VectorXd z(static_cast<Eigen::Index>(N));
    for (auto& e : z) e = 2.0 * rng.uniform() - 1.0;
    const double l1 = z.lpNorm<1>();
    if (l1 > 0) x += (noise / l1) * z;
  }

  const Eigen::VectorXd y = M * x;
  const BasisPursuitResult bp = basis_pursuit(M, y, opt);

  RecoveryReport rep;
  rep.s = s;
  rep.objective = bp.objective;
  const double err = (x - bp.v).norm();
  const double xn = x.norm();
  rep.rel_error = xn > 0 ? err / xn : err;
  rep.success = rep.rel_error <= 1e-6;
  rep.sigma = sigma_k(x, s);
  if (rep.sigma > 0 && s > 0)
    rep.stability_ratio = err * std::sqrt(static_cast<double>(s)) / rep.sigma;
  return rep;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t s, std::size_t trial) {
  return CounterRng(seed, (static_cast<std::uint64_t>(s) << 32) ^ trial).next();
}

namespace {

void require_trials(std::size_t trials) {
  if (trials == 0) throw ParameterError("empty experiment");
}

// Outcome codes: 1 success, 0 failure, 2 solver failure.
int run_one(const SparseRows& M, std::size_t s, std::uint64_t seed,
            const BasisPursuitOptions& opt) {
  try {
    return recovery_trial(M, s, 0.0, seed, opt).success ? 1 : 0;
  } catch (const SolverNotConverged&) {
    return 2;
  }
}

std::vector<CurveRow> tally(const std::vector<std::size_t>& grid, std::size_t trials,
                            const std::vector<int>& outcome) {
  std::vector<CurveRow> rows;
  std::vector<double> rates, weights;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    CurveRow r;
    r.s = grid[g];
    r.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
      const int o = outcome[g * trials + t];
      r.successes += (o == 1);
      r.solver_failures += (o == 2);
    }
    r.rate = static_cast<double>(r.successes) / static_cast<double>(trials);
    rates.push_back(r.rate);
    weights.push_back(static_cast<double>(trials));
    rows.push_back(r);
  }
  // Smooth in order of increasing s.
  std::vector<std::size_t> order(rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return rows[a].s < rows[b].s; });
  std::vector<double> r2, w2;
  for (auto i : order) {
    r2.push_back(rates[i]);
    w2.push_back(weights[i]);
  }
  const auto fit = isotonic_nonincreasing(r2, w2);
  for (std::size_t k = 0; k < order.size(); ++k) rows[order[k]].smoothed = fit[k];
  return rows;
}

}  // namespace

std::vector<CurveRow> recovery_curve(const SparseRows& M,
                                     const std::vector<std::size_t>& s_grid,
                                     std::size_t trials, std::uint64_t seed,
                                     const BasisPursuitOptions& opt) {
  require_trials(trials);
  const std::size_t total = s_grid.size() * trials;
  std::vector<int> outcome(total);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(total); ++i) {
    const std::size_t g = static_cast<std::size_t>(i) / trials;
    const std::size_t t = static_cast<std::size_t>(i) % trials;
    outcome[i] = run_one(M, s_grid[g], trial_seed(seed, s_grid[g], t), opt);
  }
  return tally(s_grid, trials, outcome);
}

std::vector<CurveRow> recovery_curve_serial(const SparseRows& M,
                                            const std::vector<std::size_t>& s_grid,
                                            std::size_t trials, std::uint64_t seed,
                                            const BasisPursuitOptions& opt) {
  require_trials(trials);
  std::vector<int> outcome;
  for (std::size_t s : s_grid)
    for (std::size_t t = 0; t < trials; ++t)
      outcome.push_back(run_one(M, s, trial_seed(seed, s, t), opt));
  return tally(s_grid, trials, outcome);
}

std::vector<double> isotonic_nonincreasing(const std::vector<double>& values,
                                           const std::vector<double>& weights) {
  if (values.size() != weights.size())
    throw std::invalid_argument("values and weights differ in length");
  struct Block {
    double mean, weight;
    std::size_t len;
  };
  std::vector<Block> st;
  for (std::size_t i = 0; i < values.size(); ++i) {
    st.push_back({values[i], weights[i], 1});
    while (st.size() > 1 && st[st.size() - 2].mean < st.back().mean) {
      const Block b = st.back();
      st.pop_back();
      Block& a = st.back();
      const double w = a.weight + b.weight;
      a.mean = w > 0 ? (a.mean * a.weight + b.mean * b.weight) / w : (a.mean + b.mean) / 2;
      a.weight = w;
      a.len += b.len;
    }
  }
  std::vector<double> out;
  for (const auto& b : st) out.insert(out.end(), b.len, b.mean);
  return out;
}

std::size_t phase_transition(const std::vector<CurveRow>& curve, double threshold) {
  std::size_t best = 0;
  for (const auto& r : curve)
    if (r.smoothed >= threshold) best = std::max(best, r.s);
  return best;
}

void write_curve(std::ostream& out, const std::vector<CurveRow>& curve) {
  out << "s trials successes rate\n";
  for (const auto& r : curve)
    out << r.s << ' ' << r.trials << ' ' << r.successes << ' ' << r.rate << '\n';
}

}  // namespace l1sec
