#include "pmpg/sv_model.hpp"

#include <cmath>
#include <limits>

#include "pmpg/affine.hpp"
#include "pmpg/normal.hpp"

namespace pmpg {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

SvModel::SvModel(SvParams params, std::vector<double> y)
    : params_(params), y_(std::move(y)) {
  if (!params_.valid())
    throw ConfigError("SvModel: parameters outside the stationary region");
  if (y_.empty()) throw ConfigError("SvModel: empty observation series");
  init_sd_ = std::sqrt(params_.tau2 / (1.0 - params_.phi * params_.phi));
  trans_sd_ = std::sqrt(params_.tau2 * (1.0 - params_.rho * params_.rho));
  if (!(trans_sd_ > 0.0) || !std::isfinite(init_sd_))
    throw NumericError("SvModel: degenerate innovation scale");
}

void SvModel::conditional_moments(int t, double x_prev, double* mean,
                                  double* sd) const {
  if (t == 0) {
    *mean = params_.mu;
    *sd = init_sd_;
    return;
  }
  const double tau = std::sqrt(params_.tau2);
  *mean = params_.mu + params_.phi * (x_prev - params_.mu) +
          params_.rho * tau * std::exp(-x_prev / 2.0) * y_[t - 1];
  *sd = trans_sd_;
}

void SvModel::propagate(int t, std::span<const double> v,
                        std::span<const double> x_prev,
                        std::span<double> x_out) const {
  double mean, sd;
  conditional_moments(t, t > 0 ? x_prev[0] : 0.0, &mean, &sd);
  x_out[0] = affine_propagate(mean, sd, v[0]);
}

void SvModel::invert(int t, std::span<const double> x,
                     std::span<const double> x_prev,
                     std::span<double> v_out) const {
  double mean, sd;
  conditional_moments(t, t > 0 ? x_prev[0] : 0.0, &mean, &sd);
  v_out[0] = affine_invert(mean, sd, x[0]);
}

double SvModel::log_observation(int t, std::span<const double> x) const {
  const double yt = y_[t];
  return -0.5 * x[0] - 0.5 * yt * yt * std::exp(-x[0]) - kLogSqrt2Pi;
}

double SvModel::log_transition(int t, std::span<const double> x,
                               std::span<const double> x_prev) const {
  double mean, sd;
  conditional_moments(t, t > 0 ? x_prev[0] : 0.0, &mean, &sd);
  return normal_logpdf(x[0], mean, sd * sd);
}

std::unique_ptr<Model> sv_model(const SvParams& params, std::vector<double> y) {
  return std::make_unique<SvModel>(params, std::move(y));
}

double half_cauchy_logpdf(double tau) {
  if (tau < 0.0) return kNegInf;
  return std::log(2.0 / M_PI) - std::log1p(tau * tau);
}

double sv_log_prior_phi(double phi) {
  if (!(std::abs(phi) < 1.0)) return kNegInf;
  constexpr double a0 = 100.0, b0 = 1.5;
  const double log_beta =
      std::lgamma(a0) + std::lgamma(b0) - std::lgamma(a0 + b0);
  return -std::log(2.0) - log_beta + (a0 - 1.0) * std::log((1.0 + phi) / 2.0) +
         (b0 - 1.0) * std::log((1.0 - phi) / 2.0);
}

double sv_log_prior(const SvParams& p) {
  if (!p.valid()) return kNegInf;
  const double tau = std::sqrt(p.tau2);
  // half-Cauchy on tau carried to the tau^2 scale: |d tau / d tau^2| = 1/(2 tau)
  const double lp_tau2 = half_cauchy_logpdf(tau) - std::log(2.0 * tau);
  // flat prior on xi = atanh(rho): p(rho) = 1/(1 - rho^2) up to a constant
  const double lp_rho = -std::log1p(-p.rho * p.rho);
  return sv_log_prior_phi(p.phi) + lp_tau2 + lp_rho;
}

std::vector<double> sv_to_unconstrained(const SvParams& p) {
  return {p.mu, std::atanh(p.phi), std::log(p.tau2), std::atanh(p.rho)};
}

SvParams sv_from_unconstrained(std::span<const double> u) {
  SvParams p;
  p.mu = u[0];
  p.phi = std::tanh(u[1]);
  p.tau2 = std::exp(u[2]);
  p.rho = std::tanh(u[3]);
  return p;
}

double sv_log_jacobian(std::span<const double> u) {
  const double phi = std::tanh(u[1]);
  const double rho = std::tanh(u[3]);
  return std::log1p(-phi * phi) + u[2] + std::log1p(-rho * rho);
}

double truncated_normal(double mean, double var, double lo, double hi,
                        Stream& stream) {
  const double sd = std::sqrt(var);
  const double pa = normal_cdf((lo - mean) / sd);
  const double pb = normal_cdf((hi - mean) / sd);
  if (!(pb > pa)) {
    // all proposal mass numerically outside (lo, hi): land just inside the
    // nearer boundary
    return mean < lo ? std::nextafter(lo, hi) : std::nextafter(hi, lo);
  }
  double p = pa + stream.uniform() * (pb - pa);
  p = std::min(std::max(p, std::numeric_limits<double>::min()),
               1.0 - std::numeric_limits<double>::epsilon() / 2);
  double x = mean + sd * normal_quantile(p);
  if (x <= lo) x = std::nextafter(lo, hi);
  if (x >= hi) x = std::nextafter(hi, lo);
  return x;
}

double sv_pg_update_mu(std::span<const double> path, const SvParams& p,
                       std::span<const double> resid, Stream& stream,
                       double* cond_mean, double* cond_var) {
  const int T = static_cast<int>(path.size());
  const double phi = p.phi, rho = p.rho, tau2 = p.tau2;
  const double tau = std::sqrt(tau2);
  const double one_m_rho2 = 1.0 - rho * rho;
  const double one_m_phi2 = 1.0 - phi * phi;

  const double var =
      tau2 * one_m_rho2 /
      (one_m_phi2 * one_m_rho2 + (T - 1) * (1.0 - phi) * (1.0 - phi));
  double s = 0.0;
  for (int t = 1; t < T; ++t) {
    const double eps_star = resid[t - 1] * std::exp(-path[t - 1] / 2.0);
    s += path[t] - phi * path[t - 1] - rho * tau * eps_star;
  }
  const double num = path[0] * one_m_phi2 * one_m_rho2 + (1.0 - phi) * s;
  const double mean = var * num / (tau2 * one_m_rho2);
  if (cond_mean) *cond_mean = mean;
  if (cond_var) *cond_var = var;
  return mean + std::sqrt(var) * stream.normal();
}

namespace {

PhiUpdate phi_mh_step(double phi_cur, double prop_mean, double prop_var,
                      Stream& stream) {
  PhiUpdate out{phi_cur, false, phi_cur, kNegInf};
  if (!(prop_var > 0.0) || !std::isfinite(prop_mean)) return out;
  const double cand = truncated_normal(prop_mean, prop_var, -1.0, 1.0, stream);
  out.proposal = cand;
  const double log_ratio =
      (sv_log_prior_phi(cand) + 0.5 * std::log1p(-cand * cand)) -
      (sv_log_prior_phi(phi_cur) + 0.5 * std::log1p(-phi_cur * phi_cur));
  out.log_accept_ratio = log_ratio;
  if (std::log(stream.uniform()) < log_ratio) {
    out.phi = cand;
    out.accepted = true;
  }
  return out;
}

}  // namespace

PhiUpdate sv_pg_update_phi(std::span<const double> path, const SvParams& p,
                           std::span<const double> resid, Stream& stream) {
  const int T = static_cast<int>(path.size());
  const double mu = p.mu, rho = p.rho, tau2 = p.tau2;
  const double tau = std::sqrt(tau2);
  const double one_m_rho2 = 1.0 - rho * rho;

  double num = 0.0, den = 0.0;
  for (int t = 1; t < T; ++t) {
    const double hp = path[t - 1] - mu;
    const double eps_star = resid[t - 1] * std::exp(-path[t - 1] / 2.0);
    num += (path[t] - mu) * hp - rho * tau * hp * eps_star;
    den += hp * hp;
  }
  den -= (path[0] - mu) * (path[0] - mu) * one_m_rho2;
  if (!(den > 0.0)) return {p.phi, false, p.phi, kNegInf};
  return phi_mh_step(p.phi, num / den, tau2 * one_m_rho2 / den, stream);
}

PhiUpdate sv_pg_update_phi_factor(std::span<const double> path, double phi,
                                  double tau2, Stream& stream) {
  const int T = static_cast<int>(path.size());
  double cross = 0.0, den = 0.0;
  for (int t = 1; t < T; ++t) cross += path[t] * path[t - 1];
  for (int t = 1; t + 1 < T; ++t) den += path[t] * path[t];
  if (!(den > 0.0)) return {phi, false, phi, kNegInf};
  const double var = tau2 / den;
  return phi_mh_step(phi, var * cross / tau2, var, stream);
}

}  // namespace pmpg
