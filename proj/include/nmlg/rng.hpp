#pragma once

#include <cstdint>

namespace nmlg::rng {

// SplitMix64 finalizer; full-avalanche 64-bit mix.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-derived stream: the state depends only on (seed, stream_id, index),
// so draws are reproducible under any scheduling of samples across threads.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t index) {
    constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
    std::uint64_t s = mix64(seed + kGolden);
    s = mix64(s ^ (stream_id + 0xD1B54A32D192ED03ULL));
    s = mix64(s ^ (index + 0x8CB92BA72F3D8DD7ULL));
    state_ = s;
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  // [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // (0, 1]
  double uniform_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  // Standard normal via Box-Muller; the second draw of each pair is cached.
  double normal();

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace nmlg::rng
