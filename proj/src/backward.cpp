#include "pmpg/backward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "pmpg/smc.hpp"

namespace pmpg {

namespace {

int categorical_from_logs(std::span<const double> log_scores, double u,
                          int t_for_error) {
  double m = -std::numeric_limits<double>::infinity();
  for (double s : log_scores) m = std::max(m, s);
  if (!std::isfinite(m))
    throw NumericError("backward weights all zero at time " +
                       std::to_string(t_for_error));
  std::vector<double> w(log_scores.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = std::exp(log_scores[i] - m);
    sum += w[i];
  }
  double acc = 0.0;
  const double target = u * sum;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += w[i];
    if (acc >= target) return static_cast<int>(i);
  }
  return static_cast<int>(w.size()) - 1;
}

}  // namespace

Trajectory backward_simulate(const ParticleSystem& system, const Model& model,
                             Stream& stream) {
  const int T = system.T;
  const int N = system.N;
  const int d = system.d;

  std::vector<int> j(T);
  std::vector<double> scores(N);

  j[T - 1] = categorical_from_logs(
      {&system.log_w[static_cast<std::size_t>(T - 1) * N],
       static_cast<std::size_t>(N)},
      stream.uniform(), T - 1);

  for (int t = T - 2; t >= 0; --t) {
    const std::span<const double> x_next = system.state_span(t + 1, j[t + 1]);
    for (int l = 0; l < N; ++l)
      scores[l] = system.logw(t, l) +
                  model.log_transition(t + 1, x_next, system.state_span(t, l));
    j[t] = categorical_from_logs(scores, stream.uniform(), t);
  }

  (void)d;
  return Trajectory::from_system(system, j);
}

}  // namespace pmpg
