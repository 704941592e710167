#include "pmpg/model.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace pmpg {

void ParticleSystem::resize(int T_, int N_, int d_) {
  T = T_;
  N = N_;
  d = d_;
  x.assign(static_cast<std::size_t>(T) * N * d, 0.0);
  a.assign(static_cast<std::size_t>(T > 0 ? T - 1 : 0) * N, 0);
  log_w.assign(static_cast<std::size_t>(T) * N, 0.0);
  w_bar.assign(static_cast<std::size_t>(T) * N, 0.0);
  log_sum_w.assign(T, 0.0);
}

double ParticleSystem::log_z() const {
  const double log_n = std::log(static_cast<double>(N));
  double acc = 0.0;
  for (int t = 0; t < T; ++t) acc += log_sum_w[t] - log_n;
  return acc;
}

Trajectory Trajectory::from_system(const ParticleSystem& ps,
                                   const std::vector<int>& j) {
  Trajectory tr;
  tr.T = ps.T;
  tr.d = ps.d;
  tr.j = j;
  tr.x_path.resize(static_cast<std::size_t>(ps.T) * ps.d);
  for (int t = 0; t < ps.T; ++t)
    for (int c = 0; c < ps.d; ++c) tr.state(t)[c] = ps.state(t, j[t])[c];
  return tr;
}

bool Trajectory::coherent_with(const ParticleSystem& ps) const {
  if (T != ps.T || d != ps.d) return false;
  for (int t = 0; t < T; ++t)
    for (int c = 0; c < d; ++c)
      if (state(t)[c] != ps.state(t, j[t])[c]) return false;
  return true;
}

double Model::log_path_density(std::span<const double> path) const {
  const int T = horizon();
  const int d = state_dim();
  double acc = 0.0;
  std::span<const double> prev;
  for (int t = 0; t < T; ++t) {
    std::span<const double> xt = path.subspan(static_cast<std::size_t>(t) * d, d);
    acc += log_transition(t, xt, prev);
    acc += log_observation(t, xt);
    prev = xt;
  }
  return acc;
}

double normalize_log_weights(std::span<const double> log_w,
                             std::span<double> w_bar, int t_for_error) {
  double m = -std::numeric_limits<double>::infinity();
  for (double lw : log_w) {
    if (std::isnan(lw))
      throw NumericError("weight evaluation produced NaN at time " +
                         std::to_string(t_for_error));
    if (lw > m) m = lw;
  }
  if (!std::isfinite(m))
    throw NumericError("total weight degeneracy at time " +
                       std::to_string(t_for_error));
  double sum = 0.0;
  for (std::size_t i = 0; i < log_w.size(); ++i) {
    w_bar[i] = std::exp(log_w[i] - m);
    sum += w_bar[i];
  }
  for (std::size_t i = 0; i < log_w.size(); ++i) w_bar[i] /= sum;
  return m + std::log(sum);
}

}  // namespace pmpg
