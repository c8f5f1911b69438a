#pragma once

#include <cstdint>
#include <random>

namespace sidak {

/// Reproducible random stream.
///
/// The engine is std::mt19937_64 seeded through std::seed_seq with the six
/// 32-bit words (seed lo, seed hi, stream lo, stream hi, substream lo,
/// substream hi). Both the engine and seed_seq are fully specified by the
/// C++ standard, and uniforms are formed from the top 53 bits without
/// std::uniform_real_distribution, so draws are identical across
/// platforms and standard libraries.
class SeededRng {
 public:
  SeededRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t substream() const { return substream_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Independent stream for block `index` of a partitioned computation.
  SeededRng split(std::uint64_t index) const { return SeededRng(seed_, stream_, index); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t substream_;
  std::mt19937_64 engine_;
};

}  // namespace sidak
