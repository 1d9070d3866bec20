#pragma once

#include <cstdint>
#include <random>

namespace qdet {

// Seedable generator with derivable child streams. A child obtained via
// split(k) depends only on (seed, stream, k), so Monte-Carlo sweeps can hand
// one stream to each sample and stay bit-reproducible no matter how the work
// is scheduled.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  // Independent substream; deterministic function of this stream's identity.
  Rng split(std::uint64_t substream) const;

  double uniform();   // [0, 1)
  double gaussian();  // standard normal

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

}  // namespace qdet
