#pragma once

#include <memory>
#include <span>
#include <vector>

#include "pmpg/model.hpp"

namespace pmpg {

/// Scalar linear-Gaussian state space model, the validation oracle:
///   x_1 ~ N(0, state_sd^2 / (1 - phi^2))
///   x_t = phi x_{t-1} + state_sd w_t
///   y_t = x_t + obs_sd e_t
struct LinearGaussianSpec {
  double phi = 0.8;
  double state_sd = 0.5;
  double obs_sd = 1.0;

  bool valid() const {
    return std::abs(phi) < 1.0 && state_sd > 0.0 && obs_sd > 0.0;
  }
};

class LinearGaussianModel : public Model {
 public:
  LinearGaussianModel(LinearGaussianSpec spec, std::vector<double> y);

  int state_dim() const override { return 1; }
  int horizon() const override { return static_cast<int>(y_.size()); }
  void propagate(int t, std::span<const double> v,
                 std::span<const double> x_prev,
                 std::span<double> x_out) const override;
  void invert(int t, std::span<const double> x,
              std::span<const double> x_prev,
              std::span<double> v_out) const override;
  double log_observation(int t, std::span<const double> x) const override;
  double log_transition(int t, std::span<const double> x,
                        std::span<const double> x_prev) const override;

  const LinearGaussianSpec& spec() const { return spec_; }
  const std::vector<double>& data() const { return y_; }

 private:
  LinearGaussianSpec spec_;
  std::vector<double> y_;
  double init_sd_;
};

struct KalmanResult {
  double log_likelihood = 0.0;
  std::vector<double> filtered_mean, filtered_var;
  std::vector<double> smoothed_mean, smoothed_var;
};

/// Exact filter/smoother (RTS) for the model above.
KalmanResult kalman_oracle(const LinearGaussianSpec& spec,
                           std::span<const double> y);

}  // namespace pmpg
