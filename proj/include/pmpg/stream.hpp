#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pmpg {

/// Deterministic, splittable random stream. Every variate is a pure function
/// of (seed, label hash, position), so a draw can be replayed from scratch and
/// sub-streams are O(1) to create. Backed by Philox4x32-10 counter-mode
/// generation; no wall clock, OS entropy or thread identity is ever read.
///
/// A Stream is a value type: copying it clones the position, and the clone
/// replays the same sequence. Sub-streams with distinct labels are
/// statistically independent.
class Stream {
 public:
  explicit Stream(std::uint64_t seed);

  /// Child stream at `label`, independent of the parent and of siblings with
  /// other labels. The parent is not advanced.
  Stream substream(std::string_view label) const;

  /// One uniform draw, strictly inside (0,1).
  double uniform();

  /// One standard-normal draw (inverse-CDF of a uniform; one position each).
  double normal();

  /// n >= 1 draws; advances the position by n.
  std::vector<double> uniform_block(std::size_t n);
  std::vector<double> normal_block(std::size_t n);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t position() const { return pos_; }
  const std::string& label() const { return label_; }

  /// Raw state for checkpointing.
  std::uint64_t space() const { return space_; }
  void restore_position(std::uint64_t pos) { pos_ = pos; }

 private:
  Stream(std::uint64_t seed, std::uint64_t key, std::uint64_t space,
         std::string label);

  std::uint64_t word64(std::uint64_t index);

  std::uint64_t seed_ = 0;
  std::uint64_t key_ = 0;
  std::uint64_t space_ = 0;
  std::uint64_t pos_ = 0;
  std::string label_;

  // One-block cache; purely an evaluation shortcut, never part of the
  // logical state.
  std::uint64_t cached_block_ = ~std::uint64_t{0};
  std::uint32_t cached_words_[4] = {0, 0, 0, 0};
};

/// The base variates that drive one SMC pass: state variates v_x (standard
/// normal, T x N x d) and resampling variates v_a (uniform (0,1), (T-1) x N).
/// Together with the parameters they reproduce a run exactly.
struct RandomInputs {
  int T = 0;
  int N = 0;
  int d = 1;
  std::vector<double> v_x;  // T * N * d
  std::vector<double> v_a;  // (T-1) * N

  static RandomInputs draw(Stream& s, int T, int N, int d = 1);

  double* vx(int t, int i) { return v_x.data() + (static_cast<std::size_t>(t) * N + i) * d; }
  const double* vx(int t, int i) const {
    return v_x.data() + (static_cast<std::size_t>(t) * N + i) * d;
  }
  // Resampling row r selects the ancestors of the time r+1 particles.
  double& va(int r, int i) { return v_a[static_cast<std::size_t>(r) * N + i]; }
  double va(int r, int i) const { return v_a[static_cast<std::size_t>(r) * N + i]; }

  bool dims_match(int T_, int N_, int d_) const {
    return T == T_ && N == N_ && d == d_ &&
           v_x.size() == static_cast<std::size_t>(T) * N * d &&
           v_a.size() == static_cast<std::size_t>(T > 0 ? T - 1 : 0) * N;
  }
};

}  // namespace pmpg
