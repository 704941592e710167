#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pmpg {

/// Integrated autocorrelation time, IACT = 1 + 2 sum_j rho_j, estimated with
/// the initial-monotone-positive-sequence truncation over lag-pair sums.
/// Requires length >= 100 and a non-constant chain.
double iact(std::span<const double> chain);

struct DrawMatrix {
  std::vector<std::string> columns;  // parameters first, then state columns
  int n_params = 0;
  int rows = 0;
  std::vector<double> data;  // rows x columns.size(), row-major

  double at(int r, int c) const {
    return data[static_cast<std::size_t>(r) * columns.size() + c];
  }
  std::vector<double> column(int c) const;
};

/// IACT / TNV / RTNV summary in the layout of the efficiency tables:
/// per-parameter IACT, max/mean over the parameter set, TNV = IACT x seconds
/// per sweep, RTNV relative to a baseline report, and min/mean/max IACT over
/// the recorded state-path columns.
struct EfficiencyReport {
  std::vector<std::string> param_names;
  std::vector<double> param_iact;
  std::vector<double> param_tnv;
  double ct_seconds = 0.0;
  double iact_max = 0.0, iact_mean = 0.0;
  double tnv_max = 0.0, tnv_mean = 0.0;
  std::optional<double> rtnv_max, rtnv_mean;
  std::optional<double> state_iact_min, state_iact_mean, state_iact_max;
};

EfficiencyReport summarize(const DrawMatrix& draws, double ct_seconds,
                           const EfficiencyReport* baseline = nullptr);

/// Text table mirroring the published layout.
std::string format_report(const EfficiencyReport& report);

/// Machine-readable JSON round trip.
std::string report_to_json(const EfficiencyReport& report);
EfficiencyReport report_from_json(const std::string& text);

}  // namespace pmpg
