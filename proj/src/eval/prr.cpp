#include "declab/eval/prr.hpp"

#include "declab/core/errors.hpp"
#include "declab/model/synthetic_lm.hpp"  // splitmix64
#include "declab/quality/normalize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace declab::eval {

namespace {

double metric_norm(const core::EvalRecord& r, const std::string& metric) {
  auto it = r.quality_norm.find(metric);
  if (it == r.quality_norm.end())
    throw ConfigError("eval: quality_norm missing metric " + metric);
  return it->second;
}

}  // namespace

void normalize_quality(std::vector<core::EvalRecord>& records, const std::string& metric) {
  std::vector<double> raw;
  raw.reserve(records.size());
  for (const auto& r : records) {
    auto it = r.quality_raw.find(metric);
    if (it == r.quality_raw.end())
      throw ConfigError("eval: quality_raw missing metric " + metric);
    raw.push_back(it->second);
  }
  std::vector<double> norm = quality::minmax_normalize(raw);
  for (size_t i = 0; i < records.size(); ++i) records[i].quality_norm[metric] = norm[i];
}

RejectionCurve build_curve(std::span<const core::EvalRecord> records,
                           const std::string& metric, CurveOrdering ordering) {
  const int n = static_cast<int>(records.size());
  if (n < 2) throw ConfigError("build_curve: need at least 2 records");

  RejectionCurve curve;
  curve.ordering = ordering;
  curve.fractions.resize(n + 1);
  for (int j = 0; j <= n; ++j) curve.fractions[j] = double(j) / double(n);

  std::vector<double> quality(n);
  for (int i = 0; i < n; ++i) quality[i] = metric_norm(records[i], metric);

  if (ordering == CurveOrdering::random) {
    double mean = std::accumulate(quality.begin(), quality.end(), 0.0) / double(n);
    curve.values.assign(n + 1, mean);
    return curve;
  }

  // Retained-first order: lowest uncertainty first, or highest quality first
  // for the oracle. Ties break by item id for determinism.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (ordering == CurveOrdering::uncertainty) {
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (records[a].uncertainty != records[b].uncertainty)
        return records[a].uncertainty < records[b].uncertainty;
      return records[a].item_id < records[b].item_id;
    });
  } else {
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (quality[a] != quality[b]) return quality[a] > quality[b];
      return records[a].item_id < records[b].item_id;
    });
  }

  // prefix[m] = sum of the first m retained qualities.
  std::vector<double> prefix(n + 1, 0.0);
  for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + quality[order[i]];

  curve.values.resize(n + 1);
  for (int j = 0; j < n; ++j) curve.values[j] = prefix[n - j] / double(n - j);
  curve.values[n] = curve.values[n - 1];  // r=1: extend the one-item value
  return curve;
}

double curve_area(const RejectionCurve& curve) {
  double area = 0.0;
  for (size_t j = 0; j + 1 < curve.values.size(); ++j)
    area += 0.5 * (curve.values[j] + curve.values[j + 1]) *
            (curve.fractions[j + 1] - curve.fractions[j]);
  return area;
}

core::PRRResult prr(std::span<const core::EvalRecord> records, const std::string& metric) {
  const int n = static_cast<int>(records.size());
  if (n < 2) throw ConfigError("prr: need at least 2 records");

  RejectionCurve uns = build_curve(records, metric, CurveOrdering::uncertainty);
  RejectionCurve orc = build_curve(records, metric, CurveOrdering::oracle);

  double mean = 0.0;
  for (const auto& r : records) mean += metric_norm(r, metric);
  mean /= double(n);

  core::PRRResult out;
  out.n_items = n;
  out.area_uns = curve_area(uns);
  out.area_orc = curve_area(orc);
  out.area_rand = mean;  // analytic constant baseline
  if (out.area_orc == out.area_rand)
    throw DegenerateQualityError("prr: oracle and random areas coincide");
  out.prr = (out.area_uns - out.area_rand) / (out.area_orc - out.area_rand);
  return out;
}

BootstrapStats bootstrap(std::span<const core::EvalRecord> records,
                         const std::string& metric, int n_trials, uint64_t seed) {
  const int n = static_cast<int>(records.size());
  if (n < 2) throw ConfigError("bootstrap: need at least 2 records");
  if (n_trials < 1) throw ConfigError("bootstrap: n_trials must be >= 1");

  // Index draws come from one sequential splitmix64 stream; trials are
  // reduced in trial order so (mean, sd) are bit-stable.
  uint64_t state = model::splitmix64(seed ^ 0xb00715ULL);
  auto next_index = [&state, n]() {
    state = model::splitmix64(state);
    return static_cast<int>(state % static_cast<uint64_t>(n));
  };

  BootstrapStats stats;
  std::vector<double> prrs;
  prrs.reserve(n_trials);
  std::vector<core::EvalRecord> trial(n);
  for (int t = 0; t < n_trials; ++t) {
    for (int i = 0; i < n; ++i) trial[i] = records[next_index()];
    try {
      normalize_quality(trial, metric);  // normalize within each resample
      prrs.push_back(prr(trial, metric).prr);
    } catch (const DegenerateQualityError&) {
      stats.n_degenerate += 1;
    }
  }
  if (prrs.empty())
    throw DegenerateQualityError("bootstrap: all trials degenerate");

  stats.n_kept = static_cast<int>(prrs.size());
  double mean = std::accumulate(prrs.begin(), prrs.end(), 0.0) / double(stats.n_kept);
  double var = 0.0;
  for (double v : prrs) var += (v - mean) * (v - mean);
  var /= double(stats.n_kept);
  stats.mean = mean;
  stats.sd = std::sqrt(var);
  return stats;
}

core::PRRResult evaluate_prr(std::span<const core::EvalRecord> records,
                             const std::string& metric, int n_trials, uint64_t seed) {
  core::PRRResult out = prr(records, metric);
  BootstrapStats stats = bootstrap(records, metric, n_trials, seed);
  out.boot_mean = stats.mean;
  out.boot_sd = stats.sd;
  out.n_boot = n_trials;
  return out;
}

PRRDiff prr_diff(const std::map<PRRKey, double>& run_a,
                 const std::map<PRRKey, double>& run_b) {
  PRRDiff diff;
  for (const auto& [key, before] : run_a) {
    auto it = run_b.find(key);
    if (it == run_b.end()) {
      diff.only_in_a.push_back(key);
      continue;
    }
    PRRDiffRow row;
    row.key = key;
    row.prr_before = before;
    row.prr_after = it->second;
    row.delta = it->second - before;
    diff.rows.push_back(std::move(row));
  }
  for (const auto& [key, after] : run_b)
    if (!run_a.count(key)) diff.only_in_b.push_back(key);
  return diff;
}

}  // namespace declab::eval
