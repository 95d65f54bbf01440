#pragma once

#include <cstdint>

namespace idnc {

// Counter-based random substreams. Every draw is a pure function of
// (seed, frame, stream, a, b), so a draw for a given frame, transmission and
// receiver is the same no matter which policy is being simulated or in what
// order other draws happen. This keeps policy comparisons on common channel
// realizations and makes experiments reproducible by seed alone.
class FrameRng {
 public:
  FrameRng(std::uint64_t seed, std::uint64_t frame) : seed_(seed), frame_(frame) {}

  // Per-receiver draw for the frame's erasure-probability variation.
  double erasure_prob_draw(std::uint32_t receiver) const { return uniform(0, receiver, 0); }

  // Per (receiver, packet) erasure draw for the uncoded initial phase.
  double initial_phase_draw(std::uint32_t receiver, std::uint32_t packet) const {
    return uniform(1, receiver, packet);
  }

  // Per (transmission, receiver) erasure draw for the recovery phase.
  double recovery_draw(std::uint64_t transmission, std::uint32_t receiver) const {
    return uniform(2, transmission, receiver);
  }

 private:
  static std::uint64_t mix(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  // Uniform in [0, 1) with 53 random mantissa bits.
  double uniform(std::uint64_t stream, std::uint64_t a, std::uint64_t b) const {
    std::uint64_t h = mix(seed_ ^ 0x6a09e667f3bcc908ULL);
    h = mix(h ^ frame_);
    h = mix(h ^ stream);
    h = mix(h ^ a);
    h = mix(h ^ b);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
  }

  std::uint64_t seed_ = 0;
  std::uint64_t frame_ = 0;
};

}  // namespace idnc
