#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pmpg {

/// Pseudo-inverse of the Hilbert curve plus the sorting permutation applied
/// before every resampling step, so that particles whose sorted indices are
/// close are actually close in state space.

struct SortResult {
  std::vector<int> zeta;      // sorted position -> original index
  std::vector<int> zeta_inv;  // original index -> sorted position
  std::vector<double> sorted_states;   // N x d, reordered
  std::vector<double> sorted_weights;  // N, reordered
};

/// Hilbert index of the cell containing `point` (coordinates clamped to
/// [0,1]; clamps are counted in *clamp_count when given). `order` bits per
/// axis; requires d * order <= 64. d == 1 degenerates to plain fixed-point
/// quantization, which reproduces the ordinary ascending sort.
std::uint64_t hilbert_index(std::span<const double> point, int order,
                            std::uint64_t* clamp_count = nullptr);

/// Per-coordinate min-max rescaling of the cloud into [0,1]^d; a coordinate
/// that is constant across the cloud maps to 0.5.
std::vector<double> normalize_to_unit_cube(std::span<const double> states,
                                           int N, int d);

/// Sorting permutation by Hilbert key (d > 1) or by state value (d == 1).
/// Ties break by original index, ascending, so the result is replay-stable.
SortResult sort_particles(std::span<const double> states,
                          std::span<const double> weights, int N, int d,
                          int order, std::uint64_t* clamp_count = nullptr);

}  // namespace pmpg
