#pragma once

#include <cstdint>

namespace dpht {

// Counter-based deterministic random stream. Output n is a strong 64-bit
// mix of (seed, stream_id, n), so draws can be replayed from any position
// and distinct stream ids give statistically independent sequences.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  // Uniform draw on the open interval (0,1); never returns 0 or 1.
  double next_unit();

  // A fresh stream keyed off this stream's identity; independent of the
  // parent's position.
  RandomStream derive(std::uint64_t substream) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t position() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// SplitMix64 finalizer; also used for stable record-id hashing.
std::uint64_t mix64(std::uint64_t x);

}  // namespace dpht
