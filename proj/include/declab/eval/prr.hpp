#pragma once

/**
 * Prediction-rejection curves, the PRR summary, bootstrap confidence
 * statistics, and report-to-report PRR diffs.
 *
 * Curve convention: rejection fractions run over the exact 1/N grid from 0
 * to 1; the retained set at fraction r has ceil((1-r)*N) items. The r=1
 * point (empty retained set) extends the one-item value so the trapezoidal
 * areas stay well defined. The random baseline is the analytic constant at
 * the global mean quality.
 *
 * PRR = (A_uns - A_rand) / (A_orc - A_rand). Equal areas in the denominator
 * (constant quality) raise DegenerateQualityError instead of returning NaN.
 * Only the *ordering* of uncertainty scores matters, so any strictly
 * monotone transform of them leaves the PRR bit-identical.
 */

#include "declab/core/types.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace declab::eval {

enum class CurveOrdering { uncertainty, oracle, random };

struct RejectionCurve {
  std::vector<double> fractions;  // 0, 1/N, ..., 1
  std::vector<double> values;     // mean retained normalized quality
  CurveOrdering ordering = CurveOrdering::uncertainty;
};

/// Fills quality_norm[metric] across the set by min-max normalizing
/// quality_raw[metric]. Throws DegenerateQualityError on constant quality.
void normalize_quality(std::vector<core::EvalRecord>& records, const std::string& metric);

RejectionCurve build_curve(std::span<const core::EvalRecord> records,
                           const std::string& metric, CurveOrdering ordering);

double curve_area(const RejectionCurve& curve);

/// PRR from normalized records (bootstrap fields left zero).
core::PRRResult prr(std::span<const core::EvalRecord> records, const std::string& metric);

struct BootstrapStats {
  double mean = 0.0;
  double sd = 0.0;  // population SD over kept trials
  int n_kept = 0;
  int n_degenerate = 0;
};

/// Resamples N records with replacement n_trials times, re-normalizes within
/// each resample, and recomputes the PRR. Deterministic given the seed;
/// degenerate trials are discarded and counted. Throws when every trial is
/// degenerate.
BootstrapStats bootstrap(std::span<const core::EvalRecord> records,
                         const std::string& metric, int n_trials, uint64_t seed);

/// prr() plus bootstrap statistics in one PRRResult.
core::PRRResult evaluate_prr(std::span<const core::EvalRecord> records,
                             const std::string& metric, int n_trials, uint64_t seed);

// ---------------------------------------------------------------------------
// Report diffs (slopegraph data)
// ---------------------------------------------------------------------------

struct PRRKey {
  std::string task;
  std::string metric;
  std::string ue_method;
  std::string strategy;

  auto operator<=>(const PRRKey&) const = default;
};

struct PRRDiffRow {
  PRRKey key;
  double prr_before = 0.0;
  double prr_after = 0.0;
  double delta = 0.0;  // prr_after - prr_before exactly
};

struct PRRDiff {
  std::vector<PRRDiffRow> rows;
  std::vector<PRRKey> only_in_a;
  std::vector<PRRKey> only_in_b;
};

PRRDiff prr_diff(const std::map<PRRKey, double>& run_a,
                 const std::map<PRRKey, double>& run_b);

}  // namespace declab::eval
