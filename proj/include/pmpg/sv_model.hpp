#pragma once

#include <memory>
#include <span>
#include <vector>

#include "pmpg/model.hpp"
#include "pmpg/stream.hpp"

namespace pmpg {

/// Univariate stochastic volatility with leverage:
///   y_t = exp(x_t/2) eps_t
///   x_1 ~ N(mu, tau2/(1-phi^2))
///   x_{t+1} = mu + phi (x_t - mu) + eta_t,  corr(eps_t, eta_t) = rho
/// so g_t = N(0, exp(x_t)), f_1 = N(mu, tau2/(1-phi^2)) and
/// f_t = N(mu + phi(x_{t-1}-mu) + rho tau exp(-x_{t-1}/2) y_{t-1},
///         tau2 (1-rho^2)).
struct SvParams {
  double mu = 0.0;
  double phi = 0.95;   // |phi| < 1
  double tau2 = 0.05;  // > 0
  double rho = 0.0;    // |rho| < 1

  bool valid() const {
    return std::abs(phi) < 1.0 && tau2 > 0.0 && std::abs(rho) < 1.0;
  }
};

class SvModel : public Model {
 public:
  SvModel(SvParams params, std::vector<double> y);

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

  const SvParams& params() const { return params_; }
  const std::vector<double>& data() const { return y_; }

  /// Conditional mean and standard deviation of x_t given x_{t-1}; the one
  /// expression shared by propagate and invert.
  void conditional_moments(int t, double x_prev, double* mean,
                           double* sd) const;

 private:
  SvParams params_;
  std::vector<double> y_;
  double init_sd_;
  double trans_sd_;
};

std::unique_ptr<Model> sv_model(const SvParams& params, std::vector<double> y);

// ---- priors (Section: empirical setup) -------------------------------

/// Normalized half-Cauchy density on the tau scale: p(tau) = (2/pi)/(1+tau^2).
double half_cauchy_logpdf(double tau);

/// Transformed-beta prior on phi: (phi+1)/2 ~ Beta(100, 1.5).
double sv_log_prior_phi(double phi);

/// Joint log prior on (mu, phi, tau2, rho): flat mu, transformed-beta phi,
/// half-Cauchy on tau carried to the tau^2 scale, flat on atanh(rho) carried
/// to the rho scale. Returns -inf outside the support.
double sv_log_prior(const SvParams& p);

// ---- unconstrained transforms ----------------------------------------

/// (mu, atanh phi, log tau2, atanh rho)
std::vector<double> sv_to_unconstrained(const SvParams& p);
SvParams sv_from_unconstrained(std::span<const double> u);
/// log |d theta / d u| at u.
double sv_log_jacobian(std::span<const double> u);

// ---- particle-Gibbs conditional samplers ------------------------------

/// Exact Gaussian conditional draw of mu given the state path. `resid` is
/// the observation series entering the leverage term (y for the univariate
/// model, y - beta f for a factor-model idiosyncratic series).
/// Writes the conditional moments when out pointers are given.
double sv_pg_update_mu(std::span<const double> path, const SvParams& p,
                       std::span<const double> resid, Stream& stream,
                       double* cond_mean = nullptr, double* cond_var = nullptr);

struct PhiUpdate {
  double phi;      // new value (equals the old one when rejected)
  bool accepted;
  double proposal; // the candidate that was drawn
  double log_accept_ratio;
};

/// Truncated-normal proposal on (-1,1) with MH acceptance
/// min{1, p(phi*) sqrt(1-phi*^2) / (p(phi) sqrt(1-phi^2))}.
PhiUpdate sv_pg_update_phi(std::span<const double> path, const SvParams& p,
                           std::span<const double> resid, Stream& stream);

/// Factor-series variant (no leverage, level fixed at zero):
/// proposal N(mean, var) truncated to (-1,1) with
/// mean = var * sum_{t>=2} l_t l_{t-1} / tau2, var = tau2 / sum_{t=2}^{T-1} l_t^2.
PhiUpdate sv_pg_update_phi_factor(std::span<const double> path, double phi,
                                  double tau2, Stream& stream);

/// One draw from N(mean, var) truncated to (lo, hi) by inverse CDF.
double truncated_normal(double mean, double var, double lo, double hi,
                        Stream& stream);

}  // namespace pmpg
