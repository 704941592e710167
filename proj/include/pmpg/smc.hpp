#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pmpg/model.hpp"
#include "pmpg/stream.hpp"

namespace pmpg {

struct SmcOptions {
  bool hilbert_sort = true;  // sort particles before every resampling step
  int hilbert_order = 16;    // bits per axis for d > 1
};

struct SmcRun {
  ParticleSystem system;
  double log_z_hat = 0.0;
  RandomInputs inputs_used;
  std::uint64_t clamp_count = 0;
};

/// Sequential Monte Carlo pass, a pure function of (model, N, inputs):
/// identical inputs give bit-identical output. Resampling is unconditional
/// multinomial on the sorted particles; the sampled sorted-space index is
/// mapped back through the sorting permutation.
SmcRun run_smc(const Model& model, int N, const RandomInputs& inputs,
               const SmcOptions& opt = {});

/// Fresh inputs for a (T, N, d) run.
RandomInputs draw_random_inputs(Stream& s, int T, int N, int d = 1);

/// Left-to-right cumulative sums of normalized weights; the final entry is
/// forced to exactly 1.0 so the min-search below is total for v near 1.
std::vector<double> cumulative_weights(std::span<const double> w);

/// A_tilde^i = min{ j : cum[j] >= v[i] } via binary search.
void multinomial_resample_cum(std::span<const double> v,
                              std::span<const double> cum, std::span<int> out);

/// Convenience form over sorted normalized weights.
std::vector<int> multinomial_resample(std::span<const double> v,
                                      std::span<const double> sorted_weights);

/// log Z recomputed from a completed system.
double log_likelihood_estimate(const ParticleSystem& system);

}  // namespace pmpg
