#pragma once

// Finite-field and Boolean-function machinery: GF(2^m) arithmetic, the
// integer Walsh-Hadamard transform, bentness testing and the prime
// searches used by the LPS and sum-product constructions.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace l1sec {

// ---------------------------------------------------------------- GF(2^m)

class Gf2mField {
 public:
  static constexpr int kMaxDegree = 16;

  // Uses the lexicographically smallest irreducible polynomial of degree m.
  explicit Gf2mField(int m);
  // Custom modulus; rejected unless irreducible of degree m (m <= 24).
  Gf2mField(int m, std::uint32_t modulus);

  int degree() const { return m_; }
  std::uint32_t modulus() const { return modulus_; }
  std::uint32_t size() const { return 1U << m_; }

  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t add(std::uint32_t x, std::uint32_t y) const { return x ^ y; }
  // Absolute trace to GF(2): x + x^2 + ... + x^(2^(m-1)).
  std::uint32_t trace(std::uint32_t x) const;

  bool operator==(const Gf2mField& o) const {
    return m_ == o.m_ && modulus_ == o.modulus_;
  }

 private:
  int m_;
  std::uint32_t modulus_;
};

// Table of default moduli, index = degree (1..16).
std::uint32_t default_modulus(int m);
// Exhaustive divisor check, degree <= 24.
bool is_irreducible_gf2(std::uint32_t poly);
// Carry-less schoolbook product followed by reduction; the oracle that
// Gf2mField::mul is tested against.
std::uint32_t gf2_poly_mulmod(std::uint32_t a, std::uint32_t b,
                              std::uint32_t modulus);

// An element bound to its field context.
class Gf2mElement {
 public:
  Gf2mElement(std::shared_ptr<const Gf2mField> field, std::uint32_t bits);

  std::uint32_t bits() const { return bits_; }
  const Gf2mField& field() const { return *field_; }

  friend Gf2mElement operator*(const Gf2mElement& x, const Gf2mElement& y);
  friend Gf2mElement operator+(const Gf2mElement& x, const Gf2mElement& y);
  bool operator==(const Gf2mElement& o) const;

 private:
  std::shared_ptr<const Gf2mField> field_;
  std::uint32_t bits_;
};

Gf2mElement gf2m_mul(const Gf2mElement& x, const Gf2mElement& y);

// ------------------------------------------------------- Boolean functions

class BooleanFunction {
 public:
  BooleanFunction(int arity, std::vector<std::uint8_t> table);
  static BooleanFunction zero(int arity);
  // f(x) = <mask, x> over GF(2).
  static BooleanFunction linear(int arity, std::uint32_t mask);

  int arity() const { return arity_; }
  std::size_t size() const { return table_.size(); }
  std::uint8_t operator()(std::uint32_t x) const { return table_[x]; }
  std::span<const std::uint8_t> table() const { return table_; }

  friend BooleanFunction operator^(const BooleanFunction& f,
                                   const BooleanFunction& g);
  bool operator==(const BooleanFunction&) const = default;

  // Truth table packed little-endian into bytes, printed as hex.
  std::string to_hex() const;
  static BooleanFunction from_hex(int arity, const std::string& hex);

 private:
  int arity_;
  std::vector<std::uint8_t> table_;
};

struct WalshSpectrum {
  int arity = 0;
  // coefficients[u] = sum_x (-1)^(f(x) + u.x)
  std::vector<std::int64_t> coefficients;

  std::int64_t parseval_sum() const;
};

WalshSpectrum walsh_transform(const BooleanFunction& f);
// Quadratic-time direct summation, kept as the test oracle.
WalshSpectrum walsh_transform_direct(const BooleanFunction& f);

// Throws std::invalid_argument for odd arity.
bool is_bent(const BooleanFunction& f);

// ------------------------------------------------------------------ primes

bool is_prime(std::uint64_t n);
// Euler's criterion; returns 1, -1 or 0.
int legendre_symbol(std::int64_t a, std::int64_t p);

struct PrimePair {
  std::uint64_t p;
  std::uint64_t q;
};

// p: largest prime <= d-1 with p = 1 mod 4. q: smallest prime = 1 mod 4,
// q != p, q > 2 sqrt(p), with q(q^2-1)(p+1)/8 >= N.
PrimePair find_prime_pq(std::uint64_t d, std::uint64_t N);

// Smallest prime p with p^3 >= n.
std::uint64_t smallest_prime_cube_at_least(std::uint64_t n);

}  // namespace l1sec
