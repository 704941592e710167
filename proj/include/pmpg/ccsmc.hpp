#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pmpg/model.hpp"
#include "pmpg/smc.hpp"
#include "pmpg/stream.hpp"

namespace pmpg {

struct CcsmcRun {
  ParticleSystem system;
  RandomInputs inputs;  // fresh free entries + reconstructed constrained ones
  double log_z_hat = 0.0;
  std::uint64_t clamp_count = 0;
  // Constrained-slot inversions whose propagated value differs from the
  // reference in the last bit (possible after a parameter change; at the
  // engine's own fixed points this stays 0).
  std::uint64_t inexact_inversions = 0;
};

/// Constrained conditional SMC: regenerates a full particle system and
/// RandomInputs consistent with the fixed reference trajectory. The
/// trajectory slots keep the reference values, the forced ancestors satisfy
/// a[t-1][j_t] = j_{t-1}, and feeding `inputs` back into run_smc reproduces
/// `system` bit-for-bit.
CcsmcRun run_ccsmc(const Model& model, int N, const Trajectory& reference,
                   Stream& stream, const SmcOptions& opt = {});

struct ConstrainedDraw {
  std::vector<double> v_a;        // N uniforms, constrained slot included
  std::vector<int> anc_sorted;    // sorted-space ancestors for every slot
};

/// Constrained multinomial resampling: free slots get fresh uniforms mapped
/// by the usual min-search; the constrained slot's uniform is drawn from
/// (F(s-1), F(s)] where s = zeta_inv[fixed_parent] is the sorted position of
/// the fixed parent, which forces anc_sorted[fixed_child] = s.
ConstrainedDraw constrained_multinomial(Stream& stream,
                                        std::span<const double> sorted_weights,
                                        std::span<const int> zeta_inv,
                                        int fixed_child, int fixed_parent);

}  // namespace pmpg
