#include "pmpg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pmpg/errors.hpp"

namespace pmpg {

using nlohmann::json;

std::vector<double> DrawMatrix::column(int c) const {
  std::vector<double> out(rows);
  for (int r = 0; r < rows; ++r) out[r] = at(r, c);
  return out;
}

double iact(std::span<const double> chain) {
  const std::size_t n = chain.size();
  if (n < 100) throw NumericError("iact: chain shorter than 100 draws");
  double mean = 0.0;
  for (double v : chain) mean += v;
  mean /= static_cast<double>(n);
  double c0 = 0.0;
  for (double v : chain) c0 += (v - mean) * (v - mean);
  c0 /= static_cast<double>(n);
  if (!(c0 > 0.0)) throw NumericError("iact: zero-variance chain");

  auto gamma = [&](std::size_t lag) {
    double acc = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i)
      acc += (chain[i] - mean) * (chain[i + lag] - mean);
    return acc / static_cast<double>(n);
  };

  // Geyer initial-monotone-positive sequence over pair sums
  // Gamma_m = gamma_{2m} + gamma_{2m+1}.
  double sum_pairs = 0.0;
  double prev_pair = std::numeric_limits<double>::infinity();
  const std::size_t max_pair = (n - 1) / 2;
  for (std::size_t m = 0; m <= max_pair; ++m) {
    double pair = gamma(2 * m) + gamma(2 * m + 1);
    if (pair <= 0.0) break;
    pair = std::min(pair, prev_pair);
    sum_pairs += pair;
    prev_pair = pair;
  }
  return std::max((2.0 * sum_pairs - c0) / c0, 0.0);
}

EfficiencyReport summarize(const DrawMatrix& draws, double ct_seconds,
                           const EfficiencyReport* baseline) {
  if (draws.rows < 100)
    throw NumericError("summarize: need at least 100 post-burn-in draws");
  EfficiencyReport rep;
  rep.ct_seconds = ct_seconds;

  for (int c = 0; c < draws.n_params; ++c) {
    rep.param_names.push_back(draws.columns[c]);
    rep.param_iact.push_back(iact(draws.column(c)));
    rep.param_tnv.push_back(rep.param_iact.back() * ct_seconds);
  }
  if (rep.param_iact.empty())
    throw NumericError("summarize: no parameter columns");

  rep.iact_max = *std::max_element(rep.param_iact.begin(), rep.param_iact.end());
  double acc = 0.0;
  for (double v : rep.param_iact) acc += v;
  rep.iact_mean = acc / static_cast<double>(rep.param_iact.size());
  rep.tnv_max = rep.iact_max * ct_seconds;
  rep.tnv_mean = rep.iact_mean * ct_seconds;

  if (baseline) {
    rep.rtnv_max = rep.tnv_max / baseline->tnv_max;
    rep.rtnv_mean = rep.tnv_mean / baseline->tnv_mean;
  }

  const int n_states = static_cast<int>(draws.columns.size()) - draws.n_params;
  if (n_states > 0) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0, tot = 0.0;
    for (int c = draws.n_params; c < static_cast<int>(draws.columns.size());
         ++c) {
      const double v = iact(draws.column(c));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      tot += v;
    }
    rep.state_iact_min = lo;
    rep.state_iact_max = hi;
    rep.state_iact_mean = tot / n_states;
  }
  return rep;
}

std::string format_report(const EfficiencyReport& r) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << "param            IACT        TNV\n";
  for (std::size_t i = 0; i < r.param_names.size(); ++i) {
    os.width(12);
    os << std::left << r.param_names[i] << std::right;
    os.width(10);
    os << r.param_iact[i];
    os.width(11);
    os << r.param_tnv[i] << "\n";
  }
  if (r.state_iact_min) {
    os << "states (min/mean/max IACT)  " << *r.state_iact_min << " / "
       << *r.state_iact_mean << " / " << *r.state_iact_max << "\n";
  }
  os << "IACT_MAX  " << r.iact_max << "\nIACT_MEAN " << r.iact_mean
     << "\nTNV_MAX   " << r.tnv_max << "\nTNV_MEAN  " << r.tnv_mean << "\n";
  if (r.rtnv_max)
    os << "RTNV_MAX  " << *r.rtnv_max << "\nRTNV_MEAN " << *r.rtnv_mean
       << "\n";
  os << "CT (s/sweep) " << r.ct_seconds << "\n";
  return os.str();
}

std::string report_to_json(const EfficiencyReport& r) {
  json j;
  j["version"] = 1;
  j["param_names"] = r.param_names;
  j["param_iact"] = r.param_iact;
  j["param_tnv"] = r.param_tnv;
  j["ct_seconds"] = r.ct_seconds;
  j["iact_max"] = r.iact_max;
  j["iact_mean"] = r.iact_mean;
  j["tnv_max"] = r.tnv_max;
  j["tnv_mean"] = r.tnv_mean;
  if (r.rtnv_max) j["rtnv_max"] = *r.rtnv_max;
  if (r.rtnv_mean) j["rtnv_mean"] = *r.rtnv_mean;
  if (r.state_iact_min) {
    j["state_iact_min"] = *r.state_iact_min;
    j["state_iact_mean"] = *r.state_iact_mean;
    j["state_iact_max"] = *r.state_iact_max;
  }
  return j.dump(2);
}

EfficiencyReport report_from_json(const std::string& text) {
  json j = json::parse(text);
  EfficiencyReport r;
  r.param_names = j.at("param_names").get<std::vector<std::string>>();
  r.param_iact = j.at("param_iact").get<std::vector<double>>();
  r.param_tnv = j.at("param_tnv").get<std::vector<double>>();
  r.ct_seconds = j.at("ct_seconds").get<double>();
  r.iact_max = j.at("iact_max").get<double>();
  r.iact_mean = j.at("iact_mean").get<double>();
  r.tnv_max = j.at("tnv_max").get<double>();
  r.tnv_mean = j.at("tnv_mean").get<double>();
  if (j.contains("rtnv_max")) r.rtnv_max = j["rtnv_max"].get<double>();
  if (j.contains("rtnv_mean")) r.rtnv_mean = j["rtnv_mean"].get<double>();
  if (j.contains("state_iact_min")) {
    r.state_iact_min = j["state_iact_min"].get<double>();
    r.state_iact_mean = j["state_iact_mean"].get<double>();
    r.state_iact_max = j["state_iact_max"].get<double>();
  }
  return r;
}

}  // namespace pmpg
