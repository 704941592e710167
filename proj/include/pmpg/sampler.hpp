#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pmpg/backward.hpp"
#include "pmpg/ccsmc.hpp"
#include "pmpg/diagnostics.hpp"
#include "pmpg/model.hpp"
#include "pmpg/smc.hpp"
#include "pmpg/stream.hpp"

namespace pmpg {

enum class BlockKind { Pmmh, Pg };

struct Block {
  BlockKind kind;
  std::vector<int> params;
};

/// Ordered partition of the parameter vector; the first p1 blocks are
/// updated by PMMH, the rest by particle Gibbs.
struct BlockingPlan {
  std::vector<Block> blocks;

  int p1() const;
  std::vector<int> flat_order() const;
  /// Partition (no overlap, no gap) and PMMH-before-PG ordering.
  void validate(int n_params) const;
};

/// Text form: "pmmh(tau2,rho)+pg(mu,phi)". A comma starts a new
/// single-parameter block; '&' joins parameters into one joint block, e.g.
/// "pmmh(tau2&rho)+pg(mu,phi)".
BlockingPlan parse_blocking(const std::string& text,
                            const std::vector<std::string>& names);
std::string format_blocking(const BlockingPlan& plan,
                            const std::vector<std::string>& names);

/// Adaptive random-walk proposal on the unconstrained scale. During warmup
/// the step is isotropic with fixed scale 0.1/sqrt(dim); afterwards the
/// covariance is the running empirical covariance plus jitter, with the
/// global scale steered toward a 0.25 acceptance rate by diminishing
/// (n^-0.6) updates. Proposals are symmetric.
class ProposalAdapter {
 public:
  explicit ProposalAdapter(int dim);

  std::vector<double> propose(std::span<const double> u, Stream& s) const;
  void observe(std::span<const double> u);
  void adapt(double acceptance_prob);

  bool warm() const { return n_ >= warmup_; }
  double scale() const { return std::exp(log_scale_); }
  int dim() const { return dim_; }

  // checkpoint access
  long n_obs() const { return n_; }
  long n_adapt() const { return adapt_n_; }
  double log_scale() const { return log_scale_; }
  const std::vector<double>& mean() const { return mean_; }
  const std::vector<double>& cov() const { return cov_; }
  void restore(long n, long adapt_n, double log_scale,
               std::vector<double> mean, std::vector<double> cov);

 private:
  int dim_;
  long n_ = 0;
  long adapt_n_ = 0;
  long warmup_ = 200;
  double log_scale_;
  std::vector<double> mean_;
  std::vector<double> cov_;  // dim x dim row-major
};

enum class PgSamplerKind { GenericMh, Specialized };

/// A parametric model family bound to one observation series: parameter
/// naming, priors, unconstrained transforms, the model factory and any
/// specialized particle-Gibbs conditional samplers.
class ParamFamily {
 public:
  virtual ~ParamFamily() = default;

  virtual std::vector<std::string> param_names() const = 0;
  virtual std::vector<double> initial_theta() const = 0;
  virtual std::unique_ptr<Model> make_model(
      std::span<const double> theta) const = 0;
  virtual double log_prior(std::span<const double> theta) const = 0;
  virtual std::vector<double> to_unconstrained(
      std::span<const double> theta) const = 0;
  virtual std::vector<double> from_unconstrained(
      std::span<const double> u) const = 0;
  virtual double log_jacobian(std::span<const double> u) const = 0;
  virtual BlockingPlan default_blocking() const = 0;
  virtual int data_horizon() const = 0;
  virtual std::string state_prefix() const { return "x"; }

  virtual PgSamplerKind pg_kind(int /*param*/) const {
    return PgSamplerKind::GenericMh;
  }
  /// Specialized conditional update of theta[param] given the state path;
  /// returns whether the (possibly Metropolis-corrected) draw was accepted.
  virtual bool pg_update(int /*param*/, std::span<const double> /*path*/,
                         std::span<double> /*theta*/, Stream& /*s*/) const {
    throw ConfigError("pg_update: no specialized sampler for this parameter");
  }
};

/// Univariate SV-with-leverage family: parameters (mu, phi, tau2, rho),
/// priors and transforms from the empirical setup, exact-Gibbs mu and
/// truncated-normal phi conditionals. Default blocking
/// pmmh(tau2,rho)+pg(mu,phi).
class SvFamily : public ParamFamily {
 public:
  explicit SvFamily(std::vector<double> y);

  std::vector<std::string> param_names() const override;
  std::vector<double> initial_theta() const override;
  std::unique_ptr<Model> make_model(std::span<const double> theta) const override;
  double log_prior(std::span<const double> theta) const override;
  std::vector<double> to_unconstrained(std::span<const double> theta) const override;
  std::vector<double> from_unconstrained(std::span<const double> u) const override;
  double log_jacobian(std::span<const double> u) const override;
  BlockingPlan default_blocking() const override;
  int data_horizon() const override { return static_cast<int>(y_.size()); }
  std::string state_prefix() const override { return "h"; }
  PgSamplerKind pg_kind(int param) const override;
  bool pg_update(int param, std::span<const double> path,
                 std::span<double> theta, Stream& s) const override;

  const std::vector<double>& data() const { return y_; }

 private:
  std::vector<double> y_;
};

/// A family with a fixed model and no sampled parameters; a chain over it
/// alternates trajectory refreshes and CCSMC input refreshes only, which is
/// how smoothing draws are produced for the linear-Gaussian checks.
class FixedModelFamily : public ParamFamily {
 public:
  using Factory = std::unique_ptr<Model> (*)(const void*);
  FixedModelFamily(std::unique_ptr<Model> prototype,
                   std::function<std::unique_ptr<Model>()> make);

  std::vector<std::string> param_names() const override { return {}; }
  std::vector<double> initial_theta() const override { return {}; }
  std::unique_ptr<Model> make_model(std::span<const double>) const override {
    return make_();
  }
  double log_prior(std::span<const double>) const override { return 0.0; }
  std::vector<double> to_unconstrained(std::span<const double>) const override {
    return {};
  }
  std::vector<double> from_unconstrained(std::span<const double>) const override {
    return {};
  }
  double log_jacobian(std::span<const double>) const override { return 0.0; }
  BlockingPlan default_blocking() const override { return {}; }
  int data_horizon() const override { return horizon_; }

 private:
  std::function<std::unique_ptr<Model>()> make_;
  int horizon_;
};

struct PmmhDecision {
  int block = 0;
  std::vector<double> theta, theta_star;
  double log_z = 0, log_z_star = 0;
  double log_prior_jac = 0, log_prior_jac_star = 0;
  double log_ratio = 0;
  bool accepted = false;
};

struct ChainOptions {
  int n_particles = 20;
  int sweeps = 11000;
  int burn_in = 1000;
  std::uint64_t seed = 1;
  std::optional<BlockingPlan> plan;  // family default when absent
  bool record_states = false;
  int state_thin = 10;
  int progress_every = 0;  // sweeps between stderr progress lines; 0 = quiet
  SmcOptions smc;
  std::string checkpoint_path;
  int checkpoint_every = 0;
  std::string resume_from;
  bool log_decisions = false;
};

struct ChainResult {
  DrawMatrix draws;
  std::vector<std::string> block_labels;
  std::vector<double> block_acceptance;
  double seconds_per_sweep = 0.0;
  std::vector<int> state_times;
  std::vector<PmmhDecision> decisions;
};

/// The four-part sweep: PMMH blocks on the current RandomInputs, backward
/// simulation of the trajectory, PG blocks given the trajectory, and a CCSMC
/// refresh of the RandomInputs. Fully reproducible from the seed.
ChainResult run_chain(const ParamFamily& family, const ChainOptions& opts);

}  // namespace pmpg
