#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace alphatest {

/// What a random stream is used for. Distinct purposes of one replication
/// never share a stream.
enum class StreamPurpose : std::uint32_t {
  factors = 1,
  covariance = 2,
  errors = 3,
  betas = 4,
  alpha = 5,
  oracle = 6,
};

/// Identifies one independent stream: (master seed, experiment, replication,
/// purpose). Experiments are e.g. the points of a power curve.
struct StreamKey {
  std::uint64_t seed = 0;
  std::uint32_t experiment = 0;
  std::uint32_t replication = 0;
  StreamPurpose purpose = StreamPurpose::factors;
};

/// Philox4x32-10 counter-based generator.
///
/// The cipher key is derived from (seed, experiment) and the upper half of
/// the 128-bit counter holds (replication, purpose), so every StreamKey maps
/// to a disjoint 2^64-block slice of one keyed counter space. Streams can be
/// created in any order on any thread with identical output.
class Philox {
 public:
  using result_type = std::uint64_t;

  explicit Philox(StreamKey key);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Marsaglia polar method).
  double normal();
  /// Uniform integer in [0, bound), unbiased.
  std::uint64_t below(std::uint64_t bound);

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                            std::array<std::uint32_t, 2> key);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_{};
  std::array<std::uint32_t, 4> counter_{};
  std::array<std::uint32_t, 4> buffer_{};
  int buffered_ = 0;  // 64-bit words left in buffer_ (0, 1 or 2)
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace alphatest
