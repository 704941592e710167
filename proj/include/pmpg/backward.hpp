#pragma once

#include "pmpg/model.hpp"
#include "pmpg/stream.hpp"

namespace pmpg {

/// Backward simulation of a trajectory from a completed particle system:
/// J_T drawn proportional to w_T, then for t = T-1,...,1 the index l is
/// drawn proportional to w_t^l f(x_{t+1}^{j_{t+1}} | x_t^l). Backward weights
/// are kept in log space with per-step max subtraction. Consumes one uniform
/// per time step from `stream`.
Trajectory backward_simulate(const ParticleSystem& system, const Model& model,
                             Stream& stream);

}  // namespace pmpg
