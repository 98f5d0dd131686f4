#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include <Eigen/Dense>

#include "l1sec/algebra.hpp"
#include "l1sec/errors.hpp"
#include "l1sec/expanders.hpp"
#include "l1sec/rng.hpp"

namespace l1sec {

namespace {

using Mat2 = std::array<std::uint64_t, 4>;  // row-major, entries mod q

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

Mat2 mul(const Mat2& x, const Mat2& y, std::uint64_t q) {
  return {(x[0] * y[0] + x[1] * y[2]) % q, (x[0] * y[1] + x[1] * y[3]) % q,
          (x[2] * y[0] + x[3] * y[2]) % q, (x[2] * y[1] + x[3] * y[3]) % q};
}

// Projective representative: first nonzero entry scaled to 1.
Mat2 canonical(Mat2 m, std::uint64_t q) {
  for (std::uint64_t e : m)
    if (e != 0) {
      const std::uint64_t inv = pow_mod(e, q - 2, q);
      for (auto& x : m) x = x * inv % q;
      return m;
    }
  throw std::logic_error("singular matrix in PGL2");
}

std::uint64_t key(const Mat2& m, std::uint64_t q) {
  return ((m[0] * q + m[1]) * q + m[2]) * q + m[3];
}

std::uint64_t mod(std::int64_t x, std::uint64_t q) {
  const auto Q = static_cast<std::int64_t>(q);
  return static_cast<std::uint64_t>(((x % Q) + Q) % Q);
}

std::vector<Mat2> lps_generators(std::uint64_t p, std::uint64_t q) {
  std::uint64_t i = 0;
  for (std::uint64_t x = 1; x < q; ++x)
    if (x * x % q == q - 1) {
      i = x;
      break;
    }
  if (i == 0) throw ParameterError("q must admit a square root of -1");

  const auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(p))) + 1;
  const auto P = static_cast<std::int64_t>(p);
  std::vector<Mat2> gens;
  for (std::int64_t a = 1; a <= r; a += 2)
    for (std::int64_t b = -r; b <= r; ++b)
      for (std::int64_t c = -r; c <= r; ++c)
        for (std::int64_t d = -r; d <= r; ++d) {
          if ((b | c | d) & 1) continue;
          if (a * a + b * b + c * c + d * d != P) continue;
          const auto I = static_cast<std::int64_t>(i);
          gens.push_back(canonical({mod(a + b * I, q), mod(c + d * I, q),
                                    mod(-c + d * I, q), mod(a - b * I, q)},
                                   q));
        }
  if (gens.size() != p + 1)
    throw std::logic_error("found " + std::to_string(gens.size()) +
                           " LPS generators, expected p+1");
  return gens;
}

}  // namespace

LpsGraph build_lps(std::uint64_t p, std::uint64_t q) {
  if (p == q) throw ParameterError("LPS needs p != q");
  if (!is_prime(p) || !is_prime(q) || p % 4 != 1 || q % 4 != 1)
    throw ParameterError("LPS needs primes p, q = 1 mod 4");
  if (static_cast<double>(q) <= 2.0 * std::sqrt(static_cast<double>(p)))
    throw ParameterError("LPS needs q > 2 sqrt(p)");
  if (q > 1000) throw GuardError("LPS q above 1000 is out of desk scale");

  const auto gens = lps_generators(p, q);
  const bool psl =
      legendre_symbol(static_cast<std::int64_t>(p), static_cast<std::int64_t>(q)) == 1;
  const std::uint64_t expected = psl ? q * (q * q - 1) / 2 : q * (q * q - 1);

  std::vector<Mat2> elems{Mat2{1, 0, 0, 1}};
  std::unordered_map<std::uint64_t, Vertex> index{{key(elems[0], q), 0}};
  std::vector<std::vector<Vertex>> adj;
  for (std::size_t head = 0; head < elems.size(); ++head) {
    std::vector<Vertex> nb;
    nb.reserve(gens.size());
    for (const auto& g : gens) {
      const Mat2 m = canonical(mul(elems[head], g, q), q);
      auto [it, fresh] = index.try_emplace(key(m, q), static_cast<Vertex>(elems.size()));
      if (fresh) elems.push_back(m);
      nb.push_back(it->second);
    }
    std::sort(nb.begin(), nb.end());
    adj.push_back(std::move(nb));
  }
  if (elems.size() != expected)
    throw std::logic_error("LPS graph has " + std::to_string(elems.size()) +
                           " vertices, expected " + std::to_string(expected));

  LpsGraph out{p, q, !psl,
               Graph{static_cast<std::uint32_t>(elems.size()),
                     static_cast<std::uint32_t>(p + 1), std::move(adj)}};
  out.graph.validate();
  return out;
}

double second_eigenvalue(const Graph& g) {
  if (g.vertices < 2) throw std::invalid_argument("need at least two vertices");
  if (g.vertices > 4000) return second_eigenvalue_lanczos(g);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(g.vertices, g.vertices);
  for (Vertex v = 0; v < g.vertices; ++v)
    for (Vertex w : g.adj[v]) A(v, w) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(g.vertices - 2);
}

double second_eigenvalue_lanczos(const Graph& g, int iterations, std::uint64_t seed) {
  const Eigen::Index n = g.vertices;
  if (n < 2) throw std::invalid_argument("need at least two vertices");
  const int steps = static_cast<int>(std::min<Eigen::Index>(iterations, n - 1));
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n) / std::sqrt(double(n));

  auto apply = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    for (Vertex v = 0; v < g.vertices; ++v)
      for (Vertex w : g.adj[v]) y(v) += x(w);
    return y;
  };

  CounterRng rng(seed);
  Eigen::VectorXd q(n);
  for (Eigen::Index i = 0; i < n; ++i) q(i) = rng.uniform() - 0.5;
  q -= ones.dot(q) * ones;
  q.normalize();

  Eigen::MatrixXd Q(n, steps);
  std::vector<double> alpha, beta;
  for (int j = 0; j < steps; ++j) {
    Q.col(j) = q;
    Eigen::VectorXd w = apply(q);
    alpha.push_back(q.dot(w));
    // Full reorthogonalization, including against the trivial eigenvector.
    for (int pass = 0; pass < 2; ++pass) {
      w -= ones.dot(w) * ones;
      w -= Q.leftCols(j + 1) * (Q.leftCols(j + 1).transpose() * w);
    }
    const double b = w.norm();
    if (b < 1e-12 || j + 1 == steps) break;
    beta.push_back(b);
    q = w / b;
  }
  const auto m = static_cast<Eigen::Index>(alpha.size());
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    T(i, i) = alpha[i];
    if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

}  // namespace l1sec
