#include "l1sec/kerdock.hpp"

#include <bit>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "l1sec/errors.hpp"

namespace l1sec {

bool is_power_of_four(std::uint64_t k) {
  return k != 0 && std::has_single_bit(k) && (std::countr_zero(k) % 2 == 0);
}

namespace {

void require_kerdock_k(std::uint32_t k) {
  if (k < 4 || !is_power_of_four(k) || k > (1U << 16))
    throw ParameterError("k must be a power of 4 in [4, 65536], got " +
                         std::to_string(k));
}

}  // namespace

BentFamily build_bent_family(std::uint32_t k) {
  require_kerdock_k(k);
  const int a = std::countr_zero(k);
  const int h = a / 2;
  const Gf2mField field(h);
  const std::uint32_t half_mask = (1U << h) - 1;

  BentFamily fam{k, a, {}};
  for (std::uint32_t c = 1; c < field.size(); ++c) {
    std::vector<std::uint8_t> t(k);
    for (std::uint32_t x = 0; x < k; ++x) {
      const std::uint32_t u = x & half_mask, v = x >> h;
      t[x] = static_cast<std::uint8_t>(field.trace(field.mul(c, field.mul(u, v))));
    }
    fam.functions.emplace_back(a, std::move(t));
  }

  for (std::size_t i = 0; i < fam.functions.size(); ++i) {
    if (!is_bent(fam.functions[i]))
      throw std::logic_error("bent family member " + std::to_string(i) +
                             " failed verification");
    for (std::size_t j = i + 1; j < fam.functions.size(); ++j)
      if (!is_bent(fam.functions[i] ^ fam.functions[j]))
        throw std::logic_error("bent family sum " + std::to_string(i) + "+" +
                               std::to_string(j) + " failed verification");
  }
  return fam;
}

MubSet build_mub(std::uint32_t k) {
  const BentFamily fam = build_bent_family(k);
  MubSet mub{k, {}};
  auto coset = [&](const BooleanFunction* f) {
    std::vector<std::int8_t> b(static_cast<std::size_t>(k) * k);
    for (std::uint32_t a = 0; a < k; ++a)
      for (std::uint32_t x = 0; x < k; ++x) {
        const int bit = (std::popcount(a & x) + (f ? (*f)(x) : 0)) & 1;
        b[static_cast<std::size_t>(a) * k + x] = bit ? -1 : 1;
      }
    return b;
  };
  mub.bases.push_back(coset(nullptr));
  for (const auto& f : fam.functions) mub.bases.push_back(coset(&f));
  if (!verify_mub_exact(mub))
    throw std::logic_error("MUB verification failed for k=" + std::to_string(k));
  return mub;
}

bool verify_mub_exact(const MubSet& mub) {
  const std::uint32_t k = mub.k;
  const std::int64_t kk = k;
  for (std::size_t i = 0; i < mub.num_bases(); ++i)
    for (std::size_t j = i; j < mub.num_bases(); ++j) {
      const auto& Bi = mub.bases[i];
      const auto& Bj = mub.bases[j];
      for (std::uint32_t a = 0; a < k; ++a) {
        const std::int8_t* ra = &Bi[static_cast<std::size_t>(a) * k];
        for (std::uint32_t b = 0; b < k; ++b) {
          const std::int8_t* rb = &Bj[static_cast<std::size_t>(b) * k];
          std::int32_t dot = 0;
          for (std::uint32_t x = 0; x < k; ++x) dot += ra[x] * rb[x];
          if (i == j) {
            if (dot != (a == b ? kk : 0)) return false;
          } else if (static_cast<std::int64_t>(dot) * dot != kk) {
            return false;
          }
        }
      }
    }
  return true;
}

std::uint32_t max_columns(std::uint32_t k) {
  require_kerdock_k(k);
  // Hadamard basis plus sqrt(k) - 1 cosets.
  const auto root = static_cast<std::uint32_t>(1U << (std::countr_zero(k) / 2));
  return root * k;
}

KerdockMatrix assemble_matrix(const MubSet& mub, std::uint32_t d) {
  const std::uint32_t k = mub.k;
  if (d < k || d > mub.num_bases() * k)
    throw ParameterError("d=" + std::to_string(d) + " outside admissible range [" +
                         std::to_string(k) + ", " +
                         std::to_string(mub.num_bases() * k) + "] for k=" +
                         std::to_string(k));
  KerdockMatrix A{k, d, std::vector<std::int8_t>(static_cast<std::size_t>(k) * d)};
  for (std::uint32_t col = 0; col < d; ++col) {
    const std::size_t basis = col / k;
    const std::uint32_t a = col % k;
    for (std::uint32_t x = 0; x < k; ++x)
      A.signs[static_cast<std::size_t>(x) * d + col] = mub.sign(basis, a, x);
  }

  const std::int64_t coh = max_scaled_coherence(A);
  if (coh * coh > static_cast<std::int64_t>(k))
    throw std::logic_error("coherence above 1/sqrt(k)");
  const double bound = std::sqrt(static_cast<double>((d + k - 1) / k));
  if (operator_norm_estimate(A) > bound + 1e-9)
    throw std::logic_error("operator norm above sqrt(ceil(d/k))");
  return A;
}

KerdockMatrix assemble_matrix(std::uint32_t k, std::uint32_t d) {
  return assemble_matrix(build_mub(k), d);
}

std::int64_t max_scaled_coherence(const KerdockMatrix& A) {
  // Column-major copy so inner products stream contiguously.
  std::vector<std::int8_t> cols(A.signs.size());
  for (std::uint32_t r = 0; r < A.k; ++r)
    for (std::uint32_t c = 0; c < A.d; ++c)
      cols[static_cast<std::size_t>(c) * A.k + r] = A.at(r, c);
  std::int64_t worst = 0;
  for (std::uint32_t i = 0; i < A.d; ++i) {
    const std::int8_t* ci = &cols[static_cast<std::size_t>(i) * A.k];
    for (std::uint32_t j = i + 1; j < A.d; ++j) {
      const std::int8_t* cj = &cols[static_cast<std::size_t>(j) * A.k];
      std::int32_t dot = 0;
      for (std::uint32_t x = 0; x < A.k; ++x) dot += ci[x] * cj[x];
      worst = std::max<std::int64_t>(worst, std::abs(dot));
    }
  }
  return worst;
}

double operator_norm_estimate(const KerdockMatrix& A) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(A.k));
  std::vector<double> v(A.d, 1.0), w(A.k), next(A.d);
  auto normalize = [](std::vector<double>& x) {
    double s = 0;
    for (double e : x) s += e * e;
    s = std::sqrt(s);
    if (s > 0)
      for (double& e : x) e /= s;
    return s;
  };
  normalize(v);
  double sigma2 = 0.0;
  for (int it = 0; it < 200; ++it) {
    for (std::uint32_t r = 0; r < A.k; ++r) {
      double s = 0;
      for (std::uint32_t c = 0; c < A.d; ++c) s += A.at(r, c) * v[c];
      w[r] = s * scale;
    }
    std::fill(next.begin(), next.end(), 0.0);
    for (std::uint32_t r = 0; r < A.k; ++r)
      for (std::uint32_t c = 0; c < A.d; ++c) next[c] += A.at(r, c) * w[r] * scale;
    sigma2 = normalize(next);
    v.swap(next);
    if (sigma2 == 0.0) break;
  }
  return std::sqrt(sigma2);
}

LocalSubspace local_subspace(std::uint32_t k, std::uint32_t d) {
  const KerdockMatrix A = assemble_matrix(k, d);
  const double t = std::sqrt(static_cast<double>(k)) / 2.0;
  const double eps = 0.25 * std::sqrt(static_cast<double>(k) / d);
  const std::string label = "kerdock k=" + std::to_string(k) + " d=" +
                            std::to_string(d);
  LocalSubspace out{SignCheckMatrix::from_dense(k, d, A.signs, label),
                    SpreadCertificate::absolute(
                        t, eps, Provenance::proved_arithmetic,
                        label + ": coherence 1/sqrt(k), norm <= sqrt(ceil(d/k))"),
                    d == k};
  if (out.degenerate) out.cert.trail.push_back("degenerate: kernel is {0}");
  return out;
}

}  // namespace l1sec
