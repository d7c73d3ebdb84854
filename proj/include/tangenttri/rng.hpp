#pragma once

// Philox4x32-10 counter-based generator. A draw is a pure function of
// (key, counter), so any sample index can be generated independently and
// parallel shards never share state.

#include <array>
#include <cstdint>

namespace tangenttri::rng {

struct Seed {
  std::uint64_t value = 0;
};

using Counter = std::array<std::uint32_t, 4>;
using Block = std::array<std::uint32_t, 4>;

struct PhiloxKey {
  std::uint32_t k0;
  std::uint32_t k1;
};

inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;
inline constexpr int kPhiloxRounds = 10;

constexpr PhiloxKey key_from_seed(Seed seed) {
  return {static_cast<std::uint32_t>(seed.value), static_cast<std::uint32_t>(seed.value >> 32)};
}

constexpr Block philox4x32(Counter ctr, PhiloxKey key) {
  for (int round = 0; round < kPhiloxRounds; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key.k0, static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key.k1, static_cast<std::uint32_t>(p0)};
    key.k0 += kPhiloxW0;
    key.k1 += kPhiloxW1;
  }
  return ctr;
}

/// Counter layout used throughout: (index low word, index high word, stream, 0).
constexpr Counter counter_for(std::uint64_t index, std::uint32_t stream) {
  return {static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), stream, 0u};
}

/// Streams keep the three sampling models on unrelated counter sets.
enum class Stream : std::uint32_t { Contacts = 0, SingleTangent = 1, NaiveConvolution = 2 };

/// Sequential view of one (seed, stream) counter sequence.
class Rng {
 public:
  explicit Rng(Seed seed, Stream stream = Stream::Contacts)
      : key_(key_from_seed(seed)), stream_(static_cast<std::uint32_t>(stream)) {}

  Block next() { return philox4x32(counter_for(position_++, stream_), key_); }

  std::uint64_t position() const { return position_; }
  void seek(std::uint64_t index) { position_ = index; }
  PhiloxKey key() const { return key_; }
  std::uint32_t stream() const { return stream_; }

 private:
  PhiloxKey key_;
  std::uint32_t stream_;
  std::uint64_t position_ = 0;
};

}  // namespace tangenttri::rng
