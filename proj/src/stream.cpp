#include "pmpg/stream.hpp"

#include <array>
#include <stdexcept>

#include "pmpg/normal.hpp"

namespace pmpg {

namespace {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

// Philox4x32-10 block function (Salmon et al. 2011 constants).
inline std::array<std::uint32_t, 4> philox_block(std::uint64_t key,
                                                 std::uint64_t ctr_hi,
                                                 std::uint64_t ctr_lo) {
  std::uint32_t c0 = static_cast<std::uint32_t>(ctr_lo);
  std::uint32_t c1 = static_cast<std::uint32_t>(ctr_lo >> 32);
  std::uint32_t c2 = static_cast<std::uint32_t>(ctr_hi);
  std::uint32_t c3 = static_cast<std::uint32_t>(ctr_hi >> 32);
  std::uint32_t k0 = static_cast<std::uint32_t>(key);
  std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = 0xD2511F53ull * c0;
    const std::uint64_t p1 = 0xCD9E8D57ull * c2;
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    c0 = hi1 ^ c1 ^ k0;
    c1 = lo1;
    c2 = hi0 ^ c3 ^ k1;
    c3 = lo0;
    k0 += 0x9E3779B9u;
    k1 += 0xBB67AE85u;
  }
  return {c0, c1, c2, c3};
}

constexpr double kInv53 = 1.0 / 9007199254740992.0;  // 2^-53

}  // namespace

Stream::Stream(std::uint64_t seed)
    : seed_(seed),
      key_(splitmix64(seed ^ 0xA5A5A5A5A5A5A5A5ull)),
      space_(splitmix64(splitmix64(seed) ^ 0x5851F42D4C957F2Dull)) {}

Stream::Stream(std::uint64_t seed, std::uint64_t key, std::uint64_t space,
               std::string label)
    : seed_(seed), key_(key), space_(space), label_(std::move(label)) {}

Stream Stream::substream(std::string_view label) const {
  if (label.empty()) throw std::invalid_argument("substream: empty label");
  const std::uint64_t child_space = splitmix64(space_ ^ splitmix64(fnv1a(label)));
  std::string child_label = label_.empty() ? std::string(label)
                                           : label_ + "/" + std::string(label);
  return Stream(seed_, key_, child_space, std::move(child_label));
}

std::uint64_t Stream::word64(std::uint64_t index) {
  const std::uint64_t block = index >> 1;
  if (block != cached_block_) {
    const auto w = philox_block(key_, space_, block);
    cached_words_[0] = w[0];
    cached_words_[1] = w[1];
    cached_words_[2] = w[2];
    cached_words_[3] = w[3];
    cached_block_ = block;
  }
  const int half = static_cast<int>(index & 1) * 2;
  return (static_cast<std::uint64_t>(cached_words_[half + 1]) << 32) |
         cached_words_[half];
}

double Stream::uniform() {
  for (;;) {
    const std::uint64_t bits = word64(pos_++) >> 11;
    if (bits != 0) return static_cast<double>(bits) * kInv53;
    // bits == 0 happens with probability 2^-53; skip to stay inside (0,1).
  }
}

double Stream::normal() { return normal_quantile(uniform()); }

std::vector<double> Stream::uniform_block(std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_block: n must be >= 1");
  std::vector<double> out(n);
  for (auto& u : out) u = uniform();
  return out;
}

std::vector<double> Stream::normal_block(std::size_t n) {
  if (n == 0) throw std::invalid_argument("normal_block: n must be >= 1");
  std::vector<double> out(n);
  for (auto& z : out) z = normal();
  return out;
}

RandomInputs RandomInputs::draw(Stream& s, int T, int N, int d) {
  if (T < 1 || N < 1 || d < 1)
    throw std::invalid_argument("RandomInputs::draw: T, N, d must be >= 1");
  RandomInputs in;
  in.T = T;
  in.N = N;
  in.d = d;
  in.v_x = s.normal_block(static_cast<std::size_t>(T) * N * d);
  if (T > 1) in.v_a = s.uniform_block(static_cast<std::size_t>(T - 1) * N);
  return in;
}

}  // namespace pmpg
