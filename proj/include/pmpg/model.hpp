#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pmpg/errors.hpp"

namespace pmpg {

/// All particles, ancestor indices and weights of one filtering pass.
/// States are stored row-major: x[(t*N + i)*d + c]. Weights are kept in log
/// space; w_bar holds the per-time normalized weights and log_sum_w[t] is
/// log sum_i w_t^i (max-subtracted log-sum-exp).
struct ParticleSystem {
  int T = 0;
  int N = 0;
  int d = 1;
  std::vector<double> x;
  std::vector<int> a;  // (T-1) x N ancestor indices in [0, N)
  std::vector<double> log_w;
  std::vector<double> w_bar;
  std::vector<double> log_sum_w;

  void resize(int T_, int N_, int d_);

  double* state(int t, int i) { return x.data() + (static_cast<std::size_t>(t) * N + i) * d; }
  const double* state(int t, int i) const {
    return x.data() + (static_cast<std::size_t>(t) * N + i) * d;
  }
  std::span<const double> state_span(int t, int i) const { return {state(t, i), static_cast<std::size_t>(d)}; }
  int& anc(int r, int i) { return a[static_cast<std::size_t>(r) * N + i]; }
  int anc(int r, int i) const { return a[static_cast<std::size_t>(r) * N + i]; }
  double& logw(int t, int i) { return log_w[static_cast<std::size_t>(t) * N + i]; }
  double logw(int t, int i) const { return log_w[static_cast<std::size_t>(t) * N + i]; }
  double& wbar(int t, int i) { return w_bar[static_cast<std::size_t>(t) * N + i]; }
  double wbar(int t, int i) const { return w_bar[static_cast<std::size_t>(t) * N + i]; }

  /// log Z_hat = sum_t (log_sum_w[t] - log N).
  double log_z() const;
};

/// A selected particle path: indices j_t and the state values x_t^{j_t}.
struct Trajectory {
  int T = 0;
  int d = 1;
  std::vector<int> j;        // length T
  std::vector<double> x_path;  // T x d

  double* state(int t) { return x_path.data() + static_cast<std::size_t>(t) * d; }
  const double* state(int t) const { return x_path.data() + static_cast<std::size_t>(t) * d; }

  static Trajectory from_system(const ParticleSystem& ps, const std::vector<int>& j);
  /// x_path[t] == ps.x[t][j[t]] exactly.
  bool coherent_with(const ParticleSystem& ps) const;
};

/// State-space model contract: densities f_1, f_t, g_t, proposal m_t and the
/// propagation map X(v; theta, x_prev) with its inverse. A Model instance
/// binds both the parameters and the observation sequence; evaluations are
/// pure and safe to call from multiple threads.
///
/// Time indices are 0-based: t = 0 is the initial step (x_prev is ignored
/// there), and log_transition(0, x, {}) must return log f_1(x).
class Model {
 public:
  virtual ~Model() = default;

  virtual int state_dim() const = 0;
  virtual int horizon() const = 0;  // number of observations T

  /// x_out = X(v; theta, x_prev); deterministic in its arguments.
  virtual void propagate(int t, std::span<const double> v,
                         std::span<const double> x_prev,
                         std::span<double> x_out) const = 0;

  /// v with propagate(t, v, x_prev) == x (bit-for-bit whenever x is
  /// attainable, else within 1e-10 relative). Throws NumericError when the
  /// proposal is degenerate at (t, x_prev).
  virtual void invert(int t, std::span<const double> x,
                      std::span<const double> x_prev,
                      std::span<double> v_out) const = 0;

  virtual double log_observation(int t, std::span<const double> x) const = 0;
  virtual double log_transition(int t, std::span<const double> x,
                                std::span<const double> x_prev) const = 0;
  virtual double log_proposal(int t, std::span<const double> x,
                              std::span<const double> x_prev) const {
    return log_transition(t, x, x_prev);
  }
  virtual bool bootstrap_proposal() const { return true; }

  /// Importance weight log w_t; equals log g_t exactly under the bootstrap
  /// proposal.
  double log_weight(int t, std::span<const double> x,
                    std::span<const double> x_prev) const {
    if (bootstrap_proposal()) return log_observation(t, x);
    return log_transition(t, x, x_prev) + log_observation(t, x) -
           log_proposal(t, x, x_prev);
  }

  /// log p(x_{1:T}, y_{1:T} | theta) = log f_1 + sum log f_t + sum log g_t.
  double log_path_density(std::span<const double> path) const;
};

/// Max-subtracted normalization of one log-weight row. Writes w_bar and
/// returns log sum_i exp(log_w_i). Throws NumericError("...time t...") when
/// every weight underflows to zero.
double normalize_log_weights(std::span<const double> log_w,
                             std::span<double> w_bar, int t_for_error);

}  // namespace pmpg
