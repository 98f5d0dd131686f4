#pragma once

#include <cstdint>

namespace l1sec {

// Counter-based generator: output i of stream (seed, stream) is
// splitmix64(seed ^ mix(stream) + i * golden). Platform independent and
// splittable, so per-trial / per-sample substreams do not depend on the
// order in which threads consume them.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() {
    ++draws_;
    return mix(key_ + counter_++ * 0x9e3779b97f4a7c15ULL);
  }

  // One random bit; counted separately so callers can account for bits.
  bool bit() {
    if (bits_left_ == 0) {
      word_ = next();
      bits_left_ = 64;
    }
    --bits_left_;
    ++bits_;
    bool b = word_ & 1U;
    word_ >>= 1;
    return b;
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound) by rejection (unbiased).
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    for (;;) {
      std::uint64_t r = next();
      if (r < limit) return r % bound;
    }
  }

  std::uint64_t bits_consumed() const { return bits_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::uint64_t draws_ = 0;
  std::uint64_t word_ = 0;
  int bits_left_ = 0;
  std::uint64_t bits_ = 0;
};

}  // namespace l1sec
