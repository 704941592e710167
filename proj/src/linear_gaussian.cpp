#include "pmpg/linear_gaussian.hpp"

#include <cmath>

#include "pmpg/affine.hpp"
#include "pmpg/normal.hpp"

namespace pmpg {

LinearGaussianModel::LinearGaussianModel(LinearGaussianSpec spec,
                                         std::vector<double> y)
    : spec_(spec), y_(std::move(y)) {
  if (!spec_.valid())
    throw ConfigError("LinearGaussianModel: invalid specification");
  if (y_.empty()) throw ConfigError("LinearGaussianModel: empty series");
  init_sd_ = spec_.state_sd / std::sqrt(1.0 - spec_.phi * spec_.phi);
}

void LinearGaussianModel::propagate(int t, std::span<const double> v,
                                    std::span<const double> x_prev,
                                    std::span<double> x_out) const {
  const double mean = t == 0 ? 0.0 : spec_.phi * x_prev[0];
  const double sd = t == 0 ? init_sd_ : spec_.state_sd;
  x_out[0] = affine_propagate(mean, sd, v[0]);
}

void LinearGaussianModel::invert(int t, std::span<const double> x,
                                 std::span<const double> x_prev,
                                 std::span<double> v_out) const {
  const double mean = t == 0 ? 0.0 : spec_.phi * x_prev[0];
  const double sd = t == 0 ? init_sd_ : spec_.state_sd;
  v_out[0] = affine_invert(mean, sd, x[0]);
}

double LinearGaussianModel::log_observation(int t,
                                            std::span<const double> x) const {
  return normal_logpdf(y_[t], x[0], spec_.obs_sd * spec_.obs_sd);
}

double LinearGaussianModel::log_transition(
    int t, std::span<const double> x, std::span<const double> x_prev) const {
  if (t == 0) return normal_logpdf(x[0], 0.0, init_sd_ * init_sd_);
  return normal_logpdf(x[0], spec_.phi * x_prev[0],
                       spec_.state_sd * spec_.state_sd);
}

KalmanResult kalman_oracle(const LinearGaussianSpec& spec,
                           std::span<const double> y) {
  if (!spec.valid()) throw NumericError("kalman_oracle: invalid specification");
  const int T = static_cast<int>(y.size());
  const double q = spec.state_sd * spec.state_sd;
  const double r = spec.obs_sd * spec.obs_sd;
  const double phi = spec.phi;

  KalmanResult out;
  out.filtered_mean.resize(T);
  out.filtered_var.resize(T);
  std::vector<double> pred_mean(T), pred_var(T);

  double m_pred = 0.0;
  double p_pred = q / (1.0 - phi * phi);
  for (int t = 0; t < T; ++t) {
    pred_mean[t] = m_pred;
    pred_var[t] = p_pred;
    const double s = p_pred + r;
    if (!(s > 0.0)) throw NumericError("kalman_oracle: singular innovation");
    out.log_likelihood += normal_logpdf(y[t], m_pred, s);
    const double k = p_pred / s;
    const double m_filt = m_pred + k * (y[t] - m_pred);
    const double p_filt = (1.0 - k) * p_pred;
    out.filtered_mean[t] = m_filt;
    out.filtered_var[t] = p_filt;
    m_pred = phi * m_filt;
    p_pred = phi * phi * p_filt + q;
  }

  out.smoothed_mean.resize(T);
  out.smoothed_var.resize(T);
  out.smoothed_mean[T - 1] = out.filtered_mean[T - 1];
  out.smoothed_var[T - 1] = out.filtered_var[T - 1];
  for (int t = T - 2; t >= 0; --t) {
    const double p_next_pred = phi * phi * out.filtered_var[t] + q;
    const double g = out.filtered_var[t] * phi / p_next_pred;
    out.smoothed_mean[t] = out.filtered_mean[t] +
                           g * (out.smoothed_mean[t + 1] - phi * out.filtered_mean[t]);
    out.smoothed_var[t] =
        out.filtered_var[t] + g * g * (out.smoothed_var[t + 1] - p_next_pred);
  }
  return out;
}

}  // namespace pmpg
