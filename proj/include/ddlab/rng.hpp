#pragma once
#include <array>
#include <cstdint>

namespace ddlab {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
// A stream is keyed by (seed, stream_id); draws are a pure function of
// (key, block counter), so trajectory i always sees the same numbers no
// matter how work is partitioned across threads.
std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> counter,
                                   std::array<uint32_t, 2> key);

class RandomStream {
 public:
  RandomStream(uint64_t seed, uint64_t stream_id);

  uint32_t next_u32();
  uint64_t next_u64();
  // uniform in [0,1) with 53 random bits
  double uniform();
  double uniform(double lo, double hi);
  // standard normal via Box-Muller (two uniforms per call, no caching)
  double normal();
  // unbiased integer in [0,n), n >= 1 (rejection sampling)
  uint32_t below(uint32_t n);

 private:
  void refill();
  std::array<uint32_t, 2> key_;
  uint64_t stream_id_ = 0;
  uint64_t block_ = 0;
  std::array<uint32_t, 4> buf_{};
  int pos_ = 4;
};

}  // namespace ddlab
