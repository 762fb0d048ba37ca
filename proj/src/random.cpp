#include "dpht/random.hpp"

namespace dpht {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  key_ = mix64(seed + kGolden) ^ mix64(stream_id * 0xD1342543DE82EF95ULL + 1);
}

std::uint64_t RandomStream::next_u64() {
  return mix64(key_ + (counter_++) * kGolden);
}

double RandomStream::next_unit() {
  // 53 random bits centered in their cell: range is ((0,1) exclusive), so
  // the Laplace inverse CDF never sees 0 or 1.
  const std::uint64_t bits = next_u64() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

RandomStream RandomStream::derive(std::uint64_t substream) const {
  return RandomStream(seed_, mix64(stream_id_ * kGolden + substream + 1));
}

}  // namespace dpht
