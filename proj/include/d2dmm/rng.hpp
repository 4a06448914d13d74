#pragma once

// Counter-based pseudorandom generator (Philox-4x32, 10 rounds) plus the
// handful of variate transforms the simulator needs.  Counter-based means
// a (seed, stream) pair fully determines the sequence with no hidden
// global state, so per-trial streams are independent and any parallel
// schedule reproduces the same draws.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace d2dmm {

class PhiloxRng {
 public:
  PhiloxRng(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_{static_cast<std::uint32_t>(stream),
                static_cast<std::uint32_t>(stream >> 32)} {}

  // One 10-round block: 128 counter bits, 64 key bits, 128 output bits.
  // Exposed so the fixed test vectors can drive it directly.
  static std::array<std::uint32_t, 4> philox_block(
      std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t prod0 = 0xD2511F53ULL * ctr[0];
      const std::uint64_t prod2 = 0xCD9E8D57ULL * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(prod0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(prod0);
      const auto hi2 = static_cast<std::uint32_t>(prod2 >> 32);
      const auto lo2 = static_cast<std::uint32_t>(prod2);
      ctr = {hi2 ^ ctr[1] ^ key[0], lo2, hi0 ^ ctr[3] ^ key[1], lo0};
      key[0] += 0x9E3779B9u;  // Weyl increments decorrelate the rounds
      key[1] += 0xBB67AE85u;
    }
    return ctr;
  }

  std::uint32_t next_u32() {
    if (pos_ == 4) {
      buf_ = philox_block({static_cast<std::uint32_t>(block_),
                           static_cast<std::uint32_t>(block_ >> 32),
                           stream_[0], stream_[1]},
                          key_);
      ++block_;
      pos_ = 0;
    }
    return buf_[pos_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
  }

  // Uniform on the open interval (0,1): 53 random bits centered in the
  // lattice, so 0 and 1 are unreachable and log(u) is always finite.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard exponential (mean 1).
  double exponential() { return -std::log(uniform()); }

  // Standard normal via Box-Muller; the paired variate is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double theta = 2.0 * M_PI * uniform();
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // Gamma(shape, 1) by Marsaglia-Tsang squeeze rejection; cost is O(1)
  // per draw at any shape, unlike a sum of exponentials.  Shapes below 1
  // use the boost Gamma(a) = Gamma(a+1) * U^{1/a}.
  double gamma(double shape) {
    if (!(shape > 0.0))
      throw std::invalid_argument("gamma: requires shape > 0");
    if (shape < 1.0)
      return gamma(shape + 1.0) * std::pow(uniform(), 1.0 / shape);
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / (3.0 * std::sqrt(d));
    for (;;) {
      const double x = normal();
      const double t = 1.0 + c * x;
      if (t <= 0.0) continue;
      const double v = t * t * t;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

 private:
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 2> stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace d2dmm
