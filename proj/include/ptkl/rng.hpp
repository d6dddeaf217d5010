#pragma once

#include <array>
#include <cstdint>

namespace ptkl {

/// Philox4x32-10 block function (Salmon et al., SC'11). Exposed for
/// known-answer testing.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

/// A reproducible random stream identified by (master_seed, stream_id).
///
/// The master seed is the Philox key; the stream id occupies the upper
/// half of the 128-bit counter and the block index the lower half, so
/// distinct stream ids never share a counter value. A stream is owned
/// by one worker at a time; copying it forks an identical sequence.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Next 64 random bits.
  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform();

  /// Standard normal variate (Box-Muller, second value cached).
  double normal();

 private:
  void refill();

  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ptkl
