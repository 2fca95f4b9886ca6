#pragma once

#include <array>
#include <cstdint>

namespace needlets::rng {

// One block of the Philox4x32-10 counter-based generator.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// Stream of raw 64-bit words addressed by (seed, stream, substream).
// Every word is a pure function of the address and its index, so any
// (stream, substream) slice can be regenerated independently of the rest:
// parallel replications draw from disjoint streams without coordination.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t stream,
                std::uint32_t substream = 0);

  std::uint64_t next_u64();
  // Uniform on (0, 1), 53-bit resolution, never exactly 0 or 1.
  double next_uniform();

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint32_t stream_lo_;
  std::uint32_t stream_hi_;
  std::uint32_t substream_;
  std::uint32_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
};

// Standard normal draws on top of a CounterStream (Box-Muller).
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t stream,
               std::uint32_t substream = 0);

  double next();

 private:
  CounterStream base_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace needlets::rng
