#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <limits>
#include <numeric>

#include <Eigen/SparseCholesky>

#include "l1sec/sensing.hpp"

namespace l1sec {

namespace {

// Dense rank reduction is used while M fits comfortably in memory.
constexpr double kDenseReduceLimit = 2e7;

struct Reduced {
  SparseRows M;
  Eigen::VectorXd b;
};

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

double inf_norm(const Eigen::VectorXd& v) {
  return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}

// Keeps a maximal independent set of rows and checks that y is consistent.
Reduced reduce_rows(const SparseRows& M, const Eigen::VectorXd& y, double tol_feas) {
  const double scale = std::max(1.0, inf_norm(y));
  if (static_cast<double>(M.rows()) * static_cast<double>(M.cols()) <= kDenseReduceLimit) {
    const Eigen::MatrixXd Mt = Eigen::MatrixXd(M).transpose();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Mt);
    qr.setThreshold(1e-10);
    const Eigen::Index r = qr.rank();
    std::vector<Eigen::Index> keep(r);
    for (Eigen::Index i = 0; i < r; ++i) keep[i] = qr.colsPermutation().indices()(i);
    std::sort(keep.begin(), keep.end());
    Eigen::MatrixXd Mr(r, M.cols());
    Eigen::VectorXd br(r);
    for (Eigen::Index i = 0; i < r; ++i) {
      Mr.row(i) = Mt.col(keep[i]).transpose();
      br(i) = y(keep[i]);
    }
    // Minimum-norm solution of the reduced system, checked against all rows.
    const Eigen::MatrixXd G = Mr * Mr.transpose();
    const Eigen::VectorXd v0 = Mr.transpose() * G.ldlt().solve(br);
    const double res = inf_norm(M * v0 - y);
    if (res > tol_feas * scale)
      throw InfeasibleMeasurement("y is not in the range of M (least-squares residual " +
                                  sci(res) + ")");
    return {Mr.sparseView(), br};
  }
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  Eigen::SparseMatrix<double> G = M * M.transpose();
  Eigen::SparseMatrix<double> I(G.rows(), G.rows());
  I.setIdentity();
  ldlt.compute(G + 1e-12 * I);
  const Eigen::VectorXd v0 = M.transpose() * ldlt.solve(y);
  const double res = inf_norm(M * v0 - y);
  if (ldlt.info() != Eigen::Success || res > tol_feas * scale)
    throw InfeasibleMeasurement("y is not in the range of M (least-squares residual " +
                                sci(res) + ")");
  return {M, y};
}

double max_step(const Eigen::VectorXd& x, const Eigen::VectorXd& dx) {
  double a = 1.0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (dx(i) < 0) a = std::min(a, -x(i) / dx(i));
  return a;
}

}  // namespace

BasisPursuitResult basis_pursuit(const SparseRows& M_in, const Eigen::VectorXd& y,
                                 const BasisPursuitOptions& opt) {
  if (y.size() != M_in.rows())
    throw std::invalid_argument("measurement length does not match M");
  const Eigen::Index N = M_in.cols();
  BasisPursuitResult out;
  out.v = Eigen::VectorXd::Zero(N);
  if (inf_norm(y) == 0.0) return out;

  const Reduced red = reduce_rows(M_in, y, opt.tol_feas);
  const SparseRows& M = red.M;
  const Eigen::VectorXd& b = red.b;
  const Eigen::Index n2 = 2 * N;

  auto A = [&](const Eigen::VectorXd& z) -> Eigen::VectorXd {
    return M * (z.head(N) - z.tail(N));
  };
  auto At = [&](const Eigen::VectorXd& l) -> Eigen::VectorXd {
    Eigen::VectorXd r(n2);
    const Eigen::VectorXd g = M.transpose() * l;
    r.head(N) = g;
    r.tail(N) = -g;
    return r;
  };

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  const Eigen::SparseMatrix<double> Mc = M;
  Eigen::SparseMatrix<double> K;
  auto factor = [&](const Eigen::VectorXd& w) {
    K = Mc * w.asDiagonal() * Mc.transpose();
    double diag = 0;
    for (Eigen::Index i = 0; i < K.rows(); ++i) diag = std::max(diag, K.coeff(i, i));
    Eigen::SparseMatrix<double> I(K.rows(), K.rows());
    I.setIdentity();
    K += (1e-14 * std::max(diag, 1.0)) * I;
    if (out.iterations == 0) ldlt.analyzePattern(K);
    ldlt.factorize(K);
    if (ldlt.info() != Eigen::Success)
      throw SolverNotConverged("normal-equation factorization failed");
  };

  // Mehrotra starting point; c = 1 makes the dual estimate zero.
  factor(Eigen::VectorXd::Constant(N, 2.0));
  Eigen::VectorXd x = At(ldlt.solve(b));
  Eigen::VectorXd lam = Eigen::VectorXd::Zero(b.size());
  Eigen::VectorXd s = Eigen::VectorXd::Ones(n2);
  const Eigen::VectorXd c = Eigen::VectorXd::Ones(n2);
  x.array() += std::max(-1.5 * x.minCoeff(), 0.0);
  {
    const double xs = x.dot(s);
    const double dx = 0.5 * xs / s.sum();
    const double ds = 0.5 * xs / x.sum();
    x.array() += dx;
    s.array() += ds;
  }

  const double bnorm = 1.0 + inf_norm(b);
  // Once the slacks approach underflow the normal equations lose accuracy and
  // the primal residual drifts up; the best iterate seen is kept for that case.
  Eigen::VectorXd best_x = x, best_s = s;
  double best_merit = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int it = 0; it < opt.max_iterations; ++it) {
    const Eigen::VectorXd rb = A(x) - b;
    const Eigen::VectorXd rc = At(lam) + s - c;
    const double mu = x.dot(s) / static_cast<double>(n2);
    const double pobj = x.sum();
    const double gap = std::abs(pobj - b.dot(lam)) / (1.0 + std::abs(pobj));
    const double feas = std::max(inf_norm(rb) / bnorm, inf_norm(rc));
    const double merit = std::max(feas / opt.tol_feas, gap / opt.tol_opt);
    if (merit < best_merit) {
      best_merit = merit;
      best_x = x;
      best_s = s;
    }
    if (merit <= 1.0) {
      converged = true;
      break;
    }
    if (mu < 1e-30) break;
    out.iterations = it + 1;

    const Eigen::VectorXd D = x.cwiseQuotient(s);
    factor(D.head(N) + D.tail(N));
    auto solve = [&](const Eigen::VectorXd& rxs, Eigen::VectorXd& dx, Eigen::VectorXd& dl,
                     Eigen::VectorXd& ds) {
      const Eigen::VectorXd t = rxs.cwiseQuotient(s) + D.cwiseProduct(rc);
      const Eigen::VectorXd rhs = -rb - A(t);
      dl = ldlt.solve(rhs);
      dl += ldlt.solve(rhs - K * dl);
      const Eigen::VectorXd g = At(dl);
      dx = t + D.cwiseProduct(g);
      ds = -rc - g;
    };

    Eigen::VectorXd dxa, dla, dsa;
    solve(-x.cwiseProduct(s), dxa, dla, dsa);
    const double ap = max_step(x, dxa), ad = max_step(s, dsa);
    const double mu_aff = (x + ap * dxa).dot(s + ad * dsa) / static_cast<double>(n2);
    const double sigma = std::pow(mu_aff / mu, 3);

    Eigen::VectorXd dx, dl, ds;
    Eigen::VectorXd rxs = -x.cwiseProduct(s) - dxa.cwiseProduct(dsa);
    rxs.array() += sigma * mu;
    solve(rxs, dx, dl, ds);
    const double eta = std::max(0.95, 1.0 - mu);
    const double sp = std::min(1.0, eta * max_step(x, dx));
    const double sd = std::min(1.0, eta * max_step(s, ds));
    const Eigen::VectorXd xn = x + sp * dx;
    const Eigen::VectorXd sn = s + sd * ds;
    if (!xn.allFinite() || !sn.allFinite() || xn.minCoeff() <= 0 || sn.minCoeff() <= 0) break;
    x = xn;
    s = sn;
    lam += sd * dl;
  }
  // A near-converged iterate is accepted when the support refit below
  // restores feasibility; anything further off is a solver failure.
  if (!converged) {
    if (!(best_merit <= 1e3))
      throw SolverNotConverged("basis pursuit did not converge in " +
                               std::to_string(out.iterations) + " iterations");
    x = best_x;
    s = best_s;
  }

  out.v = x.head(N) - x.tail(N);
  out.objective = out.v.lpNorm<1>();
  out.residual = inf_norm(M_in * out.v - y);

  // Refit on the support: recovers the vertex solution to full precision.
  // Basic variables are those whose primal value dominates its dual slack.
  std::vector<Eigen::Index> supp;
  for (Eigen::Index i = 0; i < N; ++i)
    if (x(i) > s(i) || x(N + i) > s(N + i)) supp.push_back(i);
  if (!supp.empty() && static_cast<Eigen::Index>(supp.size()) <= M.rows()) {
    Eigen::MatrixXd MS(M.rows(), static_cast<Eigen::Index>(supp.size()));
    const Eigen::MatrixXd Md = M;
    for (std::size_t j = 0; j < supp.size(); ++j) MS.col(j) = Md.col(supp[j]);
    const Eigen::VectorXd w = MS.colPivHouseholderQr().solve(b);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(N);
    for (std::size_t j = 0; j < supp.size(); ++j) v(supp[j]) = w(j);
    const double res = inf_norm(M_in * v - y);
    const double obj = v.lpNorm<1>();
    if (res <= opt.tol_feas * bnorm &&
        obj <= out.objective + opt.tol_opt * (1.0 + out.objective)) {
      out.v = v;
      out.objective = obj;
      out.residual = res;
      out.polished = true;
    }
  }
  if (!out.polished && out.residual > 0.0) {
    // Minimum-norm correction onto M v = y; moves the objective by at most
    // the l1 norm of the correction.
    Eigen::SparseMatrix<double> G = Mc * Mc.transpose();
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> gl(G);
    if (gl.info() == Eigen::Success) {
      const Eigen::VectorXd v = out.v + Mc.transpose() * gl.solve(b - M * out.v);
      const double res = inf_norm(M_in * v - y);
      if (res < out.residual) {
        out.v = v;
        out.objective = v.lpNorm<1>();
        out.residual = res;
      }
    }
  }
  if (out.residual > opt.tol_feas * bnorm)
    throw SolverNotConverged("basis pursuit residual " + sci(out.residual) +
                             " above tolerance");
  return out;
}

BasisPursuitResult basis_pursuit(const Eigen::MatrixXd& M, const Eigen::VectorXd& y,
                                 const BasisPursuitOptions& opt) {
  return basis_pursuit(SparseRows(M.sparseView()), y, opt);
}

double sigma_k(const Eigen::VectorXd& x, std::size_t k) {
  std::vector<double> a(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) a[i] = std::abs(x(i));
  if (k >= a.size()) return 0.0;
  std::sort(a.begin(), a.end());
  long double sum = 0;
  for (std::size_t i = 0; i < a.size() - k; ++i) sum += a[i];
  return static_cast<double>(sum);
}

}  // namespace l1sec
