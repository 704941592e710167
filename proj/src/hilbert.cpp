#include "pmpg/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pmpg {

namespace {

// Skilling's transform (AIP Conf. Proc. 707, 2004): axis coordinates to the
// "transpose" Hilbert representation, in place.
void axes_to_transpose(std::uint32_t* coords, int bits, int dim) {
  const std::uint32_t M = std::uint32_t{1} << (bits - 1);
  // Inverse undo.
  for (std::uint32_t Q = M; Q > 1; Q >>= 1) {
    const std::uint32_t P = Q - 1;
    for (int i = 0; i < dim; ++i) {
      if (coords[i] & Q) {
        coords[0] ^= P;
      } else {
        const std::uint32_t t = (coords[0] ^ coords[i]) & P;
        coords[0] ^= t;
        coords[i] ^= t;
      }
    }
  }
  // Gray encode.
  for (int i = 1; i < dim; ++i) coords[i] ^= coords[i - 1];
  std::uint32_t t = 0;
  for (std::uint32_t Q = M; Q > 1; Q >>= 1)
    if (coords[dim - 1] & Q) t ^= Q - 1;
  for (int i = 0; i < dim; ++i) coords[i] ^= t;
}

}  // namespace

std::uint64_t hilbert_index(std::span<const double> point, int order,
                            std::uint64_t* clamp_count) {
  const int d = static_cast<int>(point.size());
  if (d < 1) throw std::invalid_argument("hilbert_index: empty point");
  if (order < 1 || d * order > 64)
    throw std::invalid_argument("hilbert_index: need 1 <= d*order <= 64");

  const double scale = static_cast<double>(std::uint64_t{1} << order);
  std::uint32_t coords[64];
  for (int i = 0; i < d; ++i) {
    double c = point[i];
    if (c < 0.0 || c > 1.0) {
      if (clamp_count) ++*clamp_count;
      c = std::clamp(c, 0.0, 1.0);
    }
    auto cell = static_cast<std::uint64_t>(c * scale);
    if (cell >= (std::uint64_t{1} << order)) cell = (std::uint64_t{1} << order) - 1;
    coords[i] = static_cast<std::uint32_t>(cell);
  }
  if (d == 1) return coords[0];

  axes_to_transpose(coords, order, d);
  // Interleave: bit b of axis i lands at position b*d + (d-1-i).
  std::uint64_t key = 0;
  for (int b = 0; b < order; ++b)
    for (int i = 0; i < d; ++i)
      if (coords[i] & (std::uint32_t{1} << b))
        key |= std::uint64_t{1} << (static_cast<std::uint64_t>(b) * d + (d - 1 - i));
  return key;
}

std::vector<double> normalize_to_unit_cube(std::span<const double> states,
                                           int N, int d) {
  if (N < 1) throw std::invalid_argument("normalize_to_unit_cube: N >= 1");
  std::vector<double> out(states.size());
  for (int c = 0; c < d; ++c) {
    double lo = states[c], hi = states[c];
    for (int i = 1; i < N; ++i) {
      const double v = states[static_cast<std::size_t>(i) * d + c];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double range = hi - lo;
    for (int i = 0; i < N; ++i) {
      const std::size_t k = static_cast<std::size_t>(i) * d + c;
      out[k] = range > 0.0 ? (states[k] - lo) / range : 0.5;
    }
  }
  return out;
}

SortResult sort_particles(std::span<const double> states,
                          std::span<const double> weights, int N, int d,
                          int order, std::uint64_t* clamp_count) {
  SortResult r;
  r.zeta.resize(N);
  for (int i = 0; i < N; ++i) r.zeta[i] = i;

  if (d == 1) {
    std::sort(r.zeta.begin(), r.zeta.end(), [&](int i, int j) {
      if (states[i] != states[j]) return states[i] < states[j];
      return i < j;
    });
  } else {
    const std::vector<double> unit = normalize_to_unit_cube(states, N, d);
    std::vector<std::uint64_t> keys(N);
    for (int i = 0; i < N; ++i)
      keys[i] = hilbert_index({unit.data() + static_cast<std::size_t>(i) * d,
                               static_cast<std::size_t>(d)},
                              order, clamp_count);
    std::sort(r.zeta.begin(), r.zeta.end(), [&](int i, int j) {
      if (keys[i] != keys[j]) return keys[i] < keys[j];
      return i < j;
    });
  }

  r.zeta_inv.resize(N);
  r.sorted_states.resize(static_cast<std::size_t>(N) * d);
  r.sorted_weights.resize(N);
  for (int s = 0; s < N; ++s) {
    const int orig = r.zeta[s];
    r.zeta_inv[orig] = s;
    r.sorted_weights[s] = weights[orig];
    for (int c = 0; c < d; ++c)
      r.sorted_states[static_cast<std::size_t>(s) * d + c] =
          states[static_cast<std::size_t>(orig) * d + c];
  }
  return r;
}

}  // namespace pmpg
