#include "ptkl/rng.hpp"

#include <cmath>
#include <numbers>

namespace ptkl {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed), stream_id_(stream_id) {}

void RngStream::refill() {
  const PhiloxCounter ctr = {static_cast<std::uint32_t>(block_),
                             static_cast<std::uint32_t>(block_ >> 32),
                             static_cast<std::uint32_t>(stream_id_),
                             static_cast<std::uint32_t>(stream_id_ >> 32)};
  const PhiloxKey key = {static_cast<std::uint32_t>(master_seed_),
                         static_cast<std::uint32_t>(master_seed_ >> 32)};
  const PhiloxCounter out = philox4x32_10(ctr, key);
  ++block_;
  buffer_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
  buffer_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
  buffered_ = 2;
}

std::uint64_t RngStream::next_u64() {
  if (buffered_ == 0) {
    refill();
  }
  return buffer_[2 - buffered_--];
}

double RngStream::uniform() {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return (static_cast<double>(next_u64() >> 11) + 0.5) * kScale;
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  spare_normal_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

}  // namespace ptkl
