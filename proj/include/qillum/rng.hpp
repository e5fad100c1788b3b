#pragma once

#include <cstdint>
#include <limits>

namespace qillum {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based generator: the i-th output is mix64(key + i * gamma), so a
/// stream is fully determined by its key and needs no shared state.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr CounterRng(std::uint64_t key) : key_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() { return mix64(key_ + (++counter_) * kGoldenGamma); }

  constexpr std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Independent stream for (seed, index, tag); used as one stream per trial.
constexpr CounterRng make_stream(std::uint64_t seed, std::uint64_t index, std::uint64_t tag = 0) {
  const std::uint64_t k = mix64(seed + kGoldenGamma * (mix64(index + 1) ^ mix64(~tag)));
  return CounterRng(k);
}

}  // namespace qillum
