#ifndef ARIMLE_RANDOM_H_
#define ARIMLE_RANDOM_H_

#include <cstdint>
#include <random>

namespace arimle {

// Random source used throughout the library.
//
// Seeds are derived with the SplitMix64 finalizer (Steele, Lea & Flood,
// 2014), and every substream is a std::mt19937_64 whose output sequence is
// fixed by the C++ standard. Uniform doubles are built from the top 53 bits
// of one 64-bit draw, so no implementation-defined std:: distribution is
// involved and the bits are identical on every platform.
//
// Changing any of these functions changes every generated dataset and
// benchmark report. Don't.

// SplitMix64 output function applied to x.
std::uint64_t Mix64(std::uint64_t x);

// Stable two-argument hash: Mix64(Mix64(seed) ^ Mix64(index + golden)).
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t index);

// Substream tags. Classifier i uses DeriveSeed(seed, kVoteStream + i) and so
// on, so adding a classifier never perturbs the columns before it.
inline constexpr std::uint64_t kTruthStream = 0;
inline constexpr std::uint64_t kVoteStream = 1;
inline constexpr std::uint64_t kProfileStream = std::uint64_t{1} << 62;
inline constexpr std::uint64_t kGroupStream = std::uint64_t{1} << 63;

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextBits() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double NextUniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double NextUniform(double lo, double hi) {
    return lo + (hi - lo) * NextUniform();
  }

  bool NextBernoulli(double p) { return NextUniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace arimle

#endif  // ARIMLE_RANDOM_H_
