#pragma once

#include <cstdint>

namespace vfk {

/// xoshiro256** seeded through SplitMix64.
///
/// The algorithm is fixed so a (seed, stream) pair yields the same sequence on
/// every platform; std:: distributions are deliberately not used because their
/// output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next();

  // Uniform in [lo, hi] by rejection sampling; requires lo <= hi.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  // Child generator seeded from this one's next output.
  Rng split();

 private:
  std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace vfk
