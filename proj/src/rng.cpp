#include "ddlab/rng.hpp"

#include <cmath>

namespace ddlab {

namespace {
constexpr uint32_t kW32A = 0x9E3779B9u;
constexpr uint32_t kW32B = 0xBB67AE85u;
constexpr uint32_t kM4x32A = 0xD2511F53u;
constexpr uint32_t kM4x32B = 0xCD9E8D57u;

inline void mul_hi_lo(uint32_t a, uint32_t b, uint32_t& lo, uint32_t& hi) {
  uint64_t p = static_cast<uint64_t>(a) * b;
  lo = static_cast<uint32_t>(p);
  hi = static_cast<uint32_t>(p >> 32);
}

inline void one_round(std::array<uint32_t, 4>& c, const std::array<uint32_t, 2>& k) {
  uint32_t lo0, hi0, lo1, hi1;
  mul_hi_lo(kM4x32A, c[0], lo0, hi0);
  mul_hi_lo(kM4x32B, c[2], lo1, hi1);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}
}  // namespace

std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> counter,
                                   std::array<uint32_t, 2> key) {
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      key[0] += kW32A;
      key[1] += kW32B;
    }
    one_round(counter, key);
  }
  return counter;
}

RandomStream::RandomStream(uint64_t seed, uint64_t stream_id)
    : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)},
      stream_id_(stream_id) {}

void RandomStream::refill() {
  std::array<uint32_t, 4> ctr = {
      static_cast<uint32_t>(block_), static_cast<uint32_t>(block_ >> 32),
      static_cast<uint32_t>(stream_id_), static_cast<uint32_t>(stream_id_ >> 32)};
  buf_ = philox4x32(ctr, key_);
  ++block_;
  pos_ = 0;
}

uint32_t RandomStream::next_u32() {
  if (pos_ >= 4) refill();
  return buf_[pos_++];
}

uint64_t RandomStream::next_u64() {
  uint64_t hi = next_u32();
  return (hi << 32) | next_u32();
}

double RandomStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double RandomStream::normal() {
  double u1 = uniform();
  double u2 = uniform();
  return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(6.283185307179586476925287 * u2);
}

uint32_t RandomStream::below(uint32_t n) {
  uint32_t bound = static_cast<uint32_t>(0x100000000ull - 0x100000000ull % n);
  for (;;) {
    uint32_t x = next_u32();
    if (x < bound || bound == 0) return x % n;
  }
}

}  // namespace ddlab
