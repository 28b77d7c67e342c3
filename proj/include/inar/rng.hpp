#pragma once

#include <cstdint>
#include <random>

namespace inar {

/// Keyed random stream. The (seed, stream_id) pair is expanded through
/// std::seed_seq, whose algorithm is fixed by the standard, so a given key
/// reproduces the same draws on every platform and thread.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
  [[nodiscard]] std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

}  // namespace inar
