#include "l1sec/algebra.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "l1sec/errors.hpp"

namespace l1sec {

namespace {

// Lexicographically smallest irreducible polynomial per degree.
constexpr std::array<std::uint32_t, 17> kModuli = {
    0,     0x2,    0x7,    0xb,    0x13,   0x25,   0x43,   0x83,  0x11b,
    0x203, 0x409,  0x805,  0x1009, 0x201b, 0x4021, 0x8003, 0x1002b};

int poly_degree(std::uint64_t p) { return p ? std::bit_width(p) - 1 : -1; }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) {
  const int db = poly_degree(b);
  for (int da = poly_degree(a); da >= db; da = poly_degree(a))
    a ^= b << (da - db);
  return a;
}

}  // namespace

std::uint32_t default_modulus(int m) {
  if (m < 1 || m > Gf2mField::kMaxDegree)
    throw std::invalid_argument("no default modulus for degree " +
                                std::to_string(m));
  return kModuli[static_cast<std::size_t>(m)];
}

bool is_irreducible_gf2(std::uint32_t poly) {
  const int d = poly_degree(poly);
  if (d < 1 || d > 24) return false;
  if (d == 1) return true;
  for (std::uint64_t q = 2; poly_degree(q) <= d / 2; ++q)
    if (poly_mod(poly, q) == 0) return false;
  return true;
}

std::uint32_t gf2_poly_mulmod(std::uint32_t a, std::uint32_t b,
                              std::uint32_t modulus) {
  std::uint64_t prod = 0;
  for (int i = 0; i < 32; ++i)
    if ((b >> i) & 1U) prod ^= static_cast<std::uint64_t>(a) << i;
  return static_cast<std::uint32_t>(poly_mod(prod, modulus));
}

Gf2mField::Gf2mField(int m) : m_(m), modulus_(default_modulus(m)) {}

Gf2mField::Gf2mField(int m, std::uint32_t modulus) : m_(m), modulus_(modulus) {
  if (m < 1 || m > 24 || poly_degree(modulus) != m ||
      !is_irreducible_gf2(modulus))
    throw std::invalid_argument("modulus is not irreducible of degree " +
                                std::to_string(m));
}

std::uint32_t Gf2mField::mul(std::uint32_t x, std::uint32_t y) const {
  // Shift-and-add with reduction after every doubling.
  const std::uint32_t top = 1U << m_;
  std::uint32_t acc = 0;
  while (y) {
    if (y & 1U) acc ^= x;
    y >>= 1;
    x <<= 1;
    if (x & top) x ^= modulus_;
  }
  return acc;
}

std::uint32_t Gf2mField::trace(std::uint32_t x) const {
  std::uint32_t t = 0;
  std::uint32_t power = x;
  for (int i = 0; i < m_; ++i) {
    t ^= power;
    power = mul(power, power);
  }
  return t;  // lies in GF(2), i.e. 0 or 1
}

Gf2mElement::Gf2mElement(std::shared_ptr<const Gf2mField> field,
                         std::uint32_t bits)
    : field_(std::move(field)), bits_(bits) {
  if (!field_) throw std::invalid_argument("null field context");
  if (bits_ >= field_->size())
    throw std::invalid_argument("element does not fit the field");
}

Gf2mElement operator*(const Gf2mElement& x, const Gf2mElement& y) {
  if (!(x.field() == y.field()))
    throw std::invalid_argument("mismatched field contexts");
  return Gf2mElement(x.field_, x.field().mul(x.bits(), y.bits()));
}

Gf2mElement gf2m_mul(const Gf2mElement& x, const Gf2mElement& y) {
  return x * y;
}

Gf2mElement operator+(const Gf2mElement& x, const Gf2mElement& y) {
  if (!(x.field() == y.field()))
    throw std::invalid_argument("mismatched field contexts");
  return Gf2mElement(x.field_, x.bits() ^ y.bits());
}

bool Gf2mElement::operator==(const Gf2mElement& o) const {
  return field() == o.field() && bits_ == o.bits_;
}

// ------------------------------------------------------- Boolean functions

BooleanFunction::BooleanFunction(int arity, std::vector<std::uint8_t> table)
    : arity_(arity), table_(std::move(table)) {
  if (arity < 0 || arity > 30)
    throw std::invalid_argument("arity out of range");
  if (table_.size() != (std::size_t{1} << arity))
    throw std::invalid_argument("truth table length must be 2^arity");
  for (auto& v : table_)
    if (v > 1) throw std::invalid_argument("truth table values must be 0/1");
}

BooleanFunction BooleanFunction::zero(int arity) {
  return BooleanFunction(arity,
                         std::vector<std::uint8_t>(std::size_t{1} << arity));
}

BooleanFunction BooleanFunction::linear(int arity, std::uint32_t mask) {
  std::vector<std::uint8_t> t(std::size_t{1} << arity);
  for (std::uint32_t x = 0; x < t.size(); ++x)
    t[x] = static_cast<std::uint8_t>(std::popcount(mask & x) & 1);
  return BooleanFunction(arity, std::move(t));
}

BooleanFunction operator^(const BooleanFunction& f, const BooleanFunction& g) {
  if (f.arity() != g.arity()) throw std::invalid_argument("arity mismatch");
  std::vector<std::uint8_t> t(f.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = f.table_[i] ^ g.table_[i];
  return BooleanFunction(f.arity(), std::move(t));
}

std::string BooleanFunction::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  const std::size_t nibbles = (table_.size() + 3) / 4;
  for (std::size_t n = 0; n < nibbles; ++n) {
    unsigned v = 0;
    for (std::size_t b = 0; b < 4 && 4 * n + b < table_.size(); ++b)
      v |= static_cast<unsigned>(table_[4 * n + b]) << b;
    out.push_back(digits[v]);
  }
  return out;
}

BooleanFunction BooleanFunction::from_hex(int arity, const std::string& hex) {
  std::vector<std::uint8_t> t(std::size_t{1} << arity);
  if (hex.size() != (t.size() + 3) / 4)
    throw std::invalid_argument("hex length does not match arity");
  for (std::size_t n = 0; n < hex.size(); ++n) {
    const int v = std::stoi(std::string(1, hex[n]), nullptr, 16);
    for (std::size_t b = 0; b < 4 && 4 * n + b < t.size(); ++b)
      t[4 * n + b] = static_cast<std::uint8_t>((v >> b) & 1);
  }
  return BooleanFunction(arity, std::move(t));
}

std::int64_t WalshSpectrum::parseval_sum() const {
  std::int64_t s = 0;
  for (auto c : coefficients) s += c * c;
  return s;
}

WalshSpectrum walsh_transform(const BooleanFunction& f) {
  WalshSpectrum w{f.arity(), std::vector<std::int64_t>(f.size())};
  auto& a = w.coefficients;
  for (std::size_t x = 0; x < a.size(); ++x) a[x] = f(x) ? -1 : 1;
  for (std::size_t h = 1; h < a.size(); h <<= 1)
    for (std::size_t i = 0; i < a.size(); i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        const std::int64_t u = a[j], v = a[j + h];
        a[j] = u + v;
        a[j + h] = u - v;
      }
  return w;
}

WalshSpectrum walsh_transform_direct(const BooleanFunction& f) {
  WalshSpectrum w{f.arity(), std::vector<std::int64_t>(f.size())};
  for (std::uint32_t u = 0; u < f.size(); ++u) {
    std::int64_t s = 0;
    for (std::uint32_t x = 0; x < f.size(); ++x)
      s += ((f(x) + std::popcount(u & x)) & 1) ? -1 : 1;
    w.coefficients[u] = s;
  }
  return w;
}

bool is_bent(const BooleanFunction& f) {
  if (f.arity() % 2 != 0)
    throw std::invalid_argument("bentness undefined for odd arity");
  const std::int64_t target = std::int64_t{1} << (f.arity() / 2);
  for (auto c : walsh_transform(f).coefficients)
    if (c != target && c != -target) return false;
  return true;
}

// ------------------------------------------------------------------ primes

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t f = 3; f * f <= n; f += 2)
    if (n % f == 0) return false;
  return true;
}

namespace {
std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 r = 1, x = b % m;
  while (e) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}
}  // namespace

int legendre_symbol(std::int64_t a, std::int64_t p) {
  const std::int64_t r = ((a % p) + p) % p;
  if (r == 0) return 0;
  const auto e = powmod(static_cast<std::uint64_t>(r),
                        static_cast<std::uint64_t>((p - 1) / 2),
                        static_cast<std::uint64_t>(p));
  return e == 1 ? 1 : -1;
}

PrimePair find_prime_pq(std::uint64_t d, std::uint64_t N) {
  if (d < 5 || N < d)
    throw ParameterError("parameters too small: need d >= 5 and N >= d");
  std::uint64_t p = 0;
  for (std::uint64_t c = d - 1; c >= 5; --c)
    if (c % 4 == 1 && is_prime(c)) {
      p = c;
      break;
    }
  if (p == 0) throw ParameterError("parameters too small: no prime p = 1 mod 4 below d");
  const double min_q = 2.0 * std::sqrt(static_cast<double>(p));
  for (std::uint64_t q = 5;; q += 4) {
    if (q == p || !is_prime(q) || static_cast<double>(q) <= min_q) continue;
    const unsigned __int128 size =
        static_cast<unsigned __int128>(q) * (q * q - 1) * (p + 1) / 8;
    if (size >= N) return {p, q};
  }
}

std::uint64_t smallest_prime_cube_at_least(std::uint64_t n) {
  for (std::uint64_t p = 2;; ++p)
    if (is_prime(p) && p * p * p >= n) return p;
}

}  // namespace l1sec
