#include "pmpg/smc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pmpg/ccsmc.hpp"
#include "pmpg/hilbert.hpp"

namespace pmpg {

std::vector<double> cumulative_weights(std::span<const double> w) {
  std::vector<double> cum(w.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += w[i];
    cum[i] = acc;
  }
  cum.back() = 1.0;
  return cum;
}

void multinomial_resample_cum(std::span<const double> v,
                              std::span<const double> cum,
                              std::span<int> out) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto it = std::lower_bound(cum.begin(), cum.end(), v[i]);
    out[i] = static_cast<int>(it == cum.end() ? cum.size() - 1
                                              : it - cum.begin());
  }
}

std::vector<int> multinomial_resample(std::span<const double> v,
                                      std::span<const double> sorted_weights) {
  const std::vector<double> cum = cumulative_weights(sorted_weights);
  std::vector<int> out(v.size());
  multinomial_resample_cum(v, cum, out);
  return out;
}

double log_likelihood_estimate(const ParticleSystem& system) {
  return system.log_z();
}

RandomInputs draw_random_inputs(Stream& s, int T, int N, int d) {
  return RandomInputs::draw(s, T, N, d);
}

ConstrainedDraw constrained_multinomial(Stream& stream,
                                        std::span<const double> sorted_weights,
                                        std::span<const int> zeta_inv,
                                        int fixed_child, int fixed_parent) {
  const int N = static_cast<int>(sorted_weights.size());
  if (fixed_parent < 0 || fixed_parent >= N || fixed_child < 0 ||
      fixed_child >= N)
    throw NumericError("constrained_multinomial: fixed index out of range");

  const std::vector<double> cum = cumulative_weights(sorted_weights);
  const int s = zeta_inv[fixed_parent];
  const double lo = s > 0 ? cum[s - 1] : 0.0;
  const double hi = cum[s];
  if (!(hi > lo) || sorted_weights[s] <= 0.0)
    throw NumericError(
        "constrained_multinomial: fixed parent has zero weight");

  ConstrainedDraw out;
  out.v_a.resize(N);
  for (int i = 0; i < N; ++i) {
    if (i == fixed_child) {
      const double u = stream.uniform();
      double v = lo + u * (hi - lo);
      if (v <= lo) v = std::nextafter(lo, 2.0);
      if (v > hi) v = hi;
      out.v_a[i] = v;
    } else {
      out.v_a[i] = stream.uniform();
    }
  }
  out.anc_sorted.resize(N);
  multinomial_resample_cum(out.v_a, cum, out.anc_sorted);
  if (out.anc_sorted[fixed_child] != s)
    throw NumericError("constrained_multinomial: constraint interval failed");
  return out;
}

namespace {

// One filtering pass driven by RandomInputs. When `reference` is non-null the
// inputs are constructed along the way (fresh draws for free slots,
// reconstructed entries for the constrained ones); the arithmetic applied to
// the variates is identical in both modes, which is what makes a replay of
// the constructed inputs reproduce the system bit-for-bit.
struct EngineResult {
  ParticleSystem system;
  double log_z = 0.0;
  std::uint64_t clamps = 0;
  std::uint64_t inexact = 0;
};

EngineResult filter_pass(const Model& model, int N, RandomInputs& inputs,
                         const Trajectory* reference, Stream* stream,
                         const SmcOptions& opt) {
  const int T = model.horizon();
  const int d = model.state_dim();
  const bool constructing = reference != nullptr;
  if (N < 1) throw ConfigError("run_smc: N must be >= 1");
  if (constructing) {
    if (N < 2) throw ConfigError("run_ccsmc: N must be >= 2");
    if (reference->T != T || reference->d != d)
      throw ConfigError("run_ccsmc: reference dimensions do not match model");
    for (int t = 0; t < T; ++t)
      if (reference->j[t] < 0 || reference->j[t] >= N)
        throw ConfigError("run_ccsmc: reference index out of range");
    inputs.T = T;
    inputs.N = N;
    inputs.d = d;
    inputs.v_x.assign(static_cast<std::size_t>(T) * N * d, 0.0);
    inputs.v_a.assign(static_cast<std::size_t>(T - 1) * N, 0.0);
  } else if (!inputs.dims_match(T, N, d)) {
    throw ConfigError("run_smc: RandomInputs dimensions do not match (T,N,d)");
  }

  EngineResult r;
  ParticleSystem& ps = r.system;
  ps.resize(T, N, d);

  std::vector<int> anc_sorted(N);

  for (int t = 0; t < T; ++t) {
    const std::span<const double> prev_states =
        t > 0 ? std::span<const double>(ps.state(t - 1, 0),
                                        static_cast<std::size_t>(N) * d)
              : std::span<const double>();

    if (t > 0) {
      // Sort the time t-1 cloud and resample through the sorted cumulative
      // weights; the sampled sorted position maps back via zeta.
      SortResult sr;
      if (opt.hilbert_sort) {
        sr = sort_particles(prev_states,
                            {&ps.wbar(t - 1, 0), static_cast<std::size_t>(N)},
                            N, d, opt.hilbert_order, &r.clamps);
      } else {
        sr.zeta.resize(N);
        sr.zeta_inv.resize(N);
        sr.sorted_weights.resize(N);
        for (int i = 0; i < N; ++i) {
          sr.zeta[i] = i;
          sr.zeta_inv[i] = i;
          sr.sorted_weights[i] = ps.wbar(t - 1, i);
        }
      }

      if (constructing) {
        const ConstrainedDraw cd = constrained_multinomial(
            *stream, sr.sorted_weights, sr.zeta_inv, reference->j[t],
            reference->j[t - 1]);
        for (int i = 0; i < N; ++i) inputs.va(t - 1, i) = cd.v_a[i];
      }
      const std::vector<double> cum = cumulative_weights(sr.sorted_weights);
      multinomial_resample_cum(
          {&inputs.va(t - 1, 0), static_cast<std::size_t>(N)}, cum,
          anc_sorted);
      for (int i = 0; i < N; ++i) ps.anc(t - 1, i) = sr.zeta[anc_sorted[i]];
      if (constructing &&
          ps.anc(t - 1, reference->j[t]) != reference->j[t - 1])
        throw NumericError("run_ccsmc: ancestor constraint failed at time " +
                           std::to_string(t));
    }

    if (constructing) {
      const int jt = reference->j[t];
      for (int i = 0; i < N; ++i) {
        if (i == jt) continue;
        for (int c = 0; c < d; ++c) inputs.vx(t, i)[c] = stream->normal();
      }
      const std::span<const double> x_prev =
          t > 0 ? ps.state_span(t - 1, ps.anc(t - 1, jt))
                : std::span<const double>();
      model.invert(t, {reference->state(t), static_cast<std::size_t>(d)},
                   x_prev, {inputs.vx(t, jt), static_cast<std::size_t>(d)});
    }

    for (int i = 0; i < N; ++i) {
      const std::span<const double> x_prev =
          t > 0 ? ps.state_span(t - 1, ps.anc(t - 1, i))
                : std::span<const double>();
      model.propagate(t, {inputs.vx(t, i), static_cast<std::size_t>(d)},
                      x_prev, {ps.state(t, i), static_cast<std::size_t>(d)});
      for (int c = 0; c < d; ++c)
        if (!std::isfinite(ps.state(t, i)[c]))
          throw NumericError("model evaluation produced non-finite state at time " +
                             std::to_string(t));
    }
    if (constructing) {
      const int jt = reference->j[t];
      for (int c = 0; c < d; ++c)
        if (ps.state(t, jt)[c] != reference->state(t)[c]) ++r.inexact;
    }

    for (int i = 0; i < N; ++i) {
      const std::span<const double> x_prev =
          t > 0 ? ps.state_span(t - 1, ps.anc(t - 1, i))
                : std::span<const double>();
      const double lw = model.log_weight(t, ps.state_span(t, i), x_prev);
      if (std::isnan(lw) || lw == std::numeric_limits<double>::infinity())
        throw NumericError("weight evaluation failed at time " +
                           std::to_string(t));
      ps.logw(t, i) = lw;
    }
    ps.log_sum_w[t] = normalize_log_weights(
        {&ps.logw(t, 0), static_cast<std::size_t>(N)},
        {&ps.wbar(t, 0), static_cast<std::size_t>(N)}, t);
  }

  r.log_z = ps.log_z();
  return r;
}

}  // namespace

SmcRun run_smc(const Model& model, int N, const RandomInputs& inputs,
               const SmcOptions& opt) {
  RandomInputs local = inputs;
  EngineResult er = filter_pass(model, N, local, nullptr, nullptr, opt);
  SmcRun run;
  run.system = std::move(er.system);
  run.log_z_hat = er.log_z;
  run.inputs_used = std::move(local);
  run.clamp_count = er.clamps;
  return run;
}

CcsmcRun run_ccsmc(const Model& model, int N, const Trajectory& reference,
                   Stream& stream, const SmcOptions& opt) {
  RandomInputs inputs;
  EngineResult er = filter_pass(model, N, inputs, &reference, &stream, opt);
  CcsmcRun run;
  run.system = std::move(er.system);
  run.inputs = std::move(inputs);
  run.log_z_hat = er.log_z;
  run.clamp_count = er.clamps;
  run.inexact_inversions = er.inexact;
  return run;
}

}  // namespace pmpg
