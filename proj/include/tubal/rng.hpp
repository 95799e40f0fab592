#pragma once

#include <cstdint>
#include <random>

namespace tubal {

// splitmix64; used to derive independent stream keys from a user seed.
inline std::uint64_t split_mix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic sub-stream key for (seed, index). Distinct indices give
// decorrelated engine seeds, so streams can be regenerated out of order.
inline std::uint64_t derive_key(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed ^ (0x2545f4914f6cdd1dull * (index + 1));
  return split_mix64(s);
}

// Gaussian stream with an explicit Box-Muller transform. The standard
// library's normal_distribution is implementation-defined, this one is
// reproducible anywhere mt19937_64 is.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t key) : engine_(key) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // u1 in (0,1], u2 in [0,1)
    double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1p-53;
    double u2 = static_cast<double>(engine_() >> 11) * 0x1p-53;
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 6.283185307179586476925286766559 * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  std::uint64_t next_u64() {
    has_spare_ = false;
    return engine_();
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace tubal
