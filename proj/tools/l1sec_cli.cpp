#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "l1sec/algebra.hpp"
#include "l1sec/analysis.hpp"
#include "l1sec/errors.hpp"
#include "l1sec/expanders.hpp"
#include "l1sec/kernels.hpp"
#include "l1sec/report.hpp"
#include "l1sec/sensing.hpp"
#include "l1sec/tanner.hpp"

using namespace l1sec;

namespace {

struct Config {
  std::uint64_t N = 0;
  double eta = 0.5;
  std::string mode = "thm1-explicit";
  std::uint64_t seed = 0;
  double beta0 = 0.05;
  double eps = 1.0 / 16;
  std::optional<double> xi0;
  std::string out;
  std::string in;
  std::uint32_t max_analysis_n = kDefaultAnalysisMaxN;
  std::uint64_t enum_budget = kDefaultEnumBudget;
  std::optional<int> t;
  std::string kind = "sum-product";
  std::uint64_t p = 0, q = 0, d = 0;
  std::string s_grid = "0,1,2,4,8";
  std::size_t trials = 200;
};

// Output goes to `path`, or stdout when it is empty.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

SignCheckMatrix load_check(const std::string& path) {
  if (path.empty()) throw ParseError(0, "no input matrix given (--in)");
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError(0, "cannot open '" + path + "'");
  return read_check(f);
}

AssemblyOptions assembly_options(const Config& c) {
  AssemblyOptions o;
  o.beta0 = c.beta0;
  o.eps = c.eps;
  o.xi0 = c.xi0;
  return o;
}

void add_certificate(Report& r, const SpreadCertificate& cert, double N) {
  r.add("t", cert.t).add("T", cert.T).add("eps", cert.eps);
  r.add("provenance", to_string(cert.provenance));
  if (cert.anchored() && cert.T > 0.5)
    r.add("delta_upper", spread_to_distortion(cert, N).value);
  else
    r.add("delta_upper", "none");
  r.add("trail", format_trail(cert.trail));
}

int cmd_construct(const Config& c, bool seed_given) {
  const AssemblyOptions opt = assembly_options(c);
  Report r;
  SignCheckMatrix check;
  if (c.mode == "thm1-explicit") {
    if (seed_given) throw ParseError(0, "--seed is not accepted by thm1-explicit");
    Theorem1Result res = assemble_theorem1(c.N, c.eta, opt);
    const auto& s = res.schedule;
    r.add("mode", c.mode).add("N", c.N).add("eta", c.eta);
    r.add("rows", static_cast<std::uint64_t>(res.check.rows()));
    r.add("nnz", static_cast<std::uint64_t>(res.check.nnz()));
    r.add("beta0", s.beta0).add("eps_schedule", s.eps).add("delta", s.delta);
    r.add("loglog", s.loglog).add("eta_tilde", s.eta_tilde).add("stop_at", s.stop_at);
    r.add("r", s.r);
    for (const auto& lp : s.levels) {
      const std::string k = "level" + std::to_string(lp.index);
      r.add(k + ".t", lp.t).add(k + ".d", lp.d).add(k + ".n", lp.n).add(k + ".rows", lp.rows);
      r.add(k + ".graph", lp.graph).add(k + ".inner", lp.inner);
      if (lp.same_as >= 0) r.add(k + ".same_as", lp.same_as);
    }
    add_certificate(r, res.cert, static_cast<double>(c.N));
    check = std::move(res.check);
  } else if (c.mode == "thm2-seeded") {
    Theorem2Result res = assemble_theorem2(c.N, c.eta, c.seed, opt);
    r.add("mode", c.mode).add("N", c.N).add("eta", c.eta).add("seed", c.seed);
    r.add("rows", static_cast<std::uint64_t>(res.check.rows()));
    r.add("nnz", static_cast<std::uint64_t>(res.check.nnz()));
    r.add("k", res.k).add("d", res.d).add("n", res.n).add("d_goal", res.d_goal);
    r.add("graph", res.graph);
    r.add("randomBitCount", res.random_bits);
    r.add("bits_le_d_squared",
          res.random_bits <= static_cast<std::uint64_t>(res.d) * res.d);
    add_certificate(r, res.cert, static_cast<double>(c.N));
    check = std::move(res.check);
  } else {
    throw ParseError(0, "unknown mode '" + c.mode + "'");
  }
  {
    Sink sink(c.out);
    write_check(sink.stream(), check);
  }
  if (!c.out.empty()) r.write(std::cout);
  return 0;
}

int cmd_analyze(const Config& c) {
  const SignCheckMatrix A = load_check(c.in);
  const KernelBasis B = kernel_basis(A, c.max_analysis_n);
  const double N = B.N;
  Report r;
  r.add("N", static_cast<std::uint64_t>(B.N));
  r.add("dim", static_cast<std::int64_t>(B.dim()));
  if (B.dim() == 0) {
    r.add("mode", "trivial").add("t", 0.0).add("T", 0.0).add("eps", 1.0);
    r.add("provenance", "exact-oracle").add("delta_lower", 1.0).add("delta_upper", "none");
    r.add("witness_sparsity", std::uint64_t{0}).add("trail", "kernel is {0}");
  } else {
    const int t_max = c.t.value_or(static_cast<int>(B.N));
    const SpreadScan scan = scan_exact_spread(B, t_max, c.enum_budget);
    const DistortionWitness w = distortion_lower_bound(B, 2000, c.seed);
    std::string profile;
    for (const auto& [t, e] : scan.exact)
      profile += (profile.empty() ? "" : ",") + std::to_string(t) + ":" + format_double(e);
    if (scan.best) {
      r.add("mode", "exact");
      r.add("t", scan.best->t).add("T", scan.best->T).add("eps", scan.best->eps);
      r.add("provenance", to_string(scan.best->provenance));
    } else {
      const int t = std::max(1, c.t.value_or(1));
      const double est = sampled_spread(B, t, 10000, c.seed);
      r.add("mode", "sampled");
      r.add("t", 0.0).add("T", static_cast<double>(t)).add("eps", est);
      r.add("provenance", to_string(Provenance::sampled));
    }
    r.add("delta_lower", w.value);
    if (scan.upper)
      r.add("delta_upper", scan.upper->value);
    else
      r.add("delta_upper", "none");
    r.add("witness_sparsity", static_cast<std::uint64_t>(w.sparsity));
    r.add("spread_profile", profile.empty() ? "none" : profile);
    r.add("trail", scan.upper ? format_trail(scan.upper->trail)
                              : std::string("no exact certificate within the budget"));
  }
  Sink sink(c.out);
  r.write(sink.stream());
  return 0;
}

int cmd_graph(const Config& c) {
  Report r;
  BipartiteGraph g;
  std::optional<ProfileBound> bound;
  if (c.kind == "sum-product") {
    Expander e = build_sum_product(c.N, c.xi0);
    r.add("kind", c.kind).add("label", e.label);
    g = std::move(e.graph);
    bound = e.profile;
  } else if (c.kind == "spectral") {
    Expander e = build_spectral_expander(c.N, c.d);
    r.add("kind", c.kind).add("label", e.label);
    g = std::move(e.graph);
    bound = e.profile;
  } else if (c.kind == "lps") {
    const LpsGraph lps = build_lps(c.p, c.q);
    const double lam = second_eigenvalue(lps.graph);
    r.add("kind", c.kind).add("p", c.p).add("q", c.q);
    r.add("vertices", lps.graph.vertices).add("degree", lps.graph.degree);
    r.add("group", lps.bipartite ? "PGL2" : "PSL2");
    r.add("lambda2", lam).add("ramanujan_bound", 2.0 * std::sqrt(static_cast<double>(c.p)));
    r.add("ramanujan", lam <= 2.0 * std::sqrt(static_cast<double>(c.p)) + 1e-6);
    g = edge_vertex_incidence(lps.graph);
  } else if (c.kind == "cycle") {
    r.add("kind", c.kind);
    g = edge_vertex_incidence(cycle_graph(static_cast<std::uint32_t>(c.N)));
  } else {
    throw ParseError(0, "unknown graph kind '" + c.kind + "'");
  }
  r.add("N", g.N).add("n", g.n).add("D", g.D).add("d", g.d);
  if (bound) r.add("profile_bound", bound->describe());
  if (g.N <= 24 && g.n <= 256) {
    const ProfileBound bf = bruteforce_profile(g);
    std::string s;
    for (std::uint32_t m = 1; m <= g.N; ++m)
      s += (m > 1 ? "," : "") + std::to_string(m) + ":" + std::to_string(bf.table[m]);
    r.add("profile_bruteforce", s);
  }
  {
    Sink sink(c.out);
    write_graph(sink.stream(), g);
  }
  if (!c.out.empty()) r.write(std::cout);
  return 0;
}

std::vector<std::size_t> parse_grid(const std::string& text) {
  std::vector<std::size_t> grid;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError(0, "bad --s-grid entry '" + tok + "'");
    grid.push_back(std::stoull(tok));
  }
  if (grid.empty()) throw ParseError(0, "empty --s-grid");
  return grid;
}

int cmd_csdemo(const Config& c) {
  const auto grid = parse_grid(c.s_grid);
  if (c.trials == 0) throw ParameterError("empty experiment");
  const SignCheckMatrix A = load_check(c.in);
  const auto curve = recovery_curve(A.to_sparse(), grid, c.trials, c.seed);
  {
    Sink sink(c.out);
    write_curve(sink.stream(), curve);
  }
  if (!c.out.empty()) {
    Report r;
    r.add("N", static_cast<std::uint64_t>(A.cols()));
    r.add("rows", static_cast<std::uint64_t>(A.rows()));
    r.add("trials", static_cast<std::uint64_t>(c.trials)).add("seed", c.seed);
    r.add("phase_transition_099", static_cast<std::uint64_t>(phase_transition(curve)));
    r.write(std::cout);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit almost-Euclidean subspaces of l1: constructions and analysis"};
  app.require_subcommand(1);
  Config c;

  auto* construct = app.add_subcommand("construct", "build a CHECK matrix");
  construct->add_option("--N", c.N, "ambient dimension")->required();
  construct->add_option("--eta", c.eta, "codimension budget as a fraction of N");
  construct->add_option("--mode", c.mode, "thm1-explicit or thm2-seeded")
      ->check(CLI::IsMember({"thm1-explicit", "thm2-seeded"}));
  auto* seed_opt = construct->add_option("--seed", c.seed, "seed (thm2-seeded only)");
  construct->add_option("--beta0", c.beta0, "boosting exponent");
  construct->add_option("--eps", c.eps, "schedule constant t_0");
  construct->add_option("--xi0", c.xi0, "assumed sum-product exponent gain");
  construct->add_option("--out", c.out, "CHECK output file (stdout if omitted)");

  auto* analyze = app.add_subcommand("analyze", "spread and distortion of a CHECK matrix");
  analyze->add_option("--in", c.in, "CHECK input file")->required();
  analyze->add_option("--max-analysis-n", c.max_analysis_n, "largest N for dense analysis");
  analyze->add_option("--enum-budget", c.enum_budget, "largest subset count enumerated");
  analyze->add_option("--t", c.t, "largest t for the exact spread scan");
  analyze->add_option("--seed", c.seed, "seed for sampling and witness search");
  analyze->add_option("--out", c.out, "report file (stdout if omitted)");

  auto* graph = app.add_subcommand("graph", "build an expander in GRAPH format");
  graph->add_option("--kind", c.kind, "sum-product, spectral, lps or cycle")
      ->check(CLI::IsMember({"sum-product", "spectral", "lps", "cycle"}));
  graph->add_option("--N", c.N, "left vertices (cycle: vertices)");
  graph->add_option("--d", c.d, "target right degree (spectral)");
  graph->add_option("--p", c.p, "LPS degree prime");
  graph->add_option("--q", c.q, "LPS field prime");
  graph->add_option("--xi0", c.xi0, "assumed sum-product exponent gain");
  graph->add_option("--out", c.out, "GRAPH output file (stdout if omitted)");

  auto* csdemo = app.add_subcommand("csdemo", "basis-pursuit recovery curve");
  csdemo->add_option("--in", c.in, "CHECK input file")->required();
  csdemo->add_option("--s-grid", c.s_grid, "comma-separated support sizes");
  csdemo->add_option("--trials", c.trials, "trials per support size");
  csdemo->add_option("--seed", c.seed, "experiment seed");
  csdemo->add_option("--out", c.out, "curve output file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ExitCode::parse);
  }

  try {
    if (*construct) return cmd_construct(c, seed_opt->count() > 0);
    if (*analyze) return cmd_analyze(c);
    if (*graph) return cmd_graph(c);
    if (*csdemo) return cmd_csdemo(c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
