#pragma once

/**
 * Sequence-level uncertainty scores from per-step traces.
 *
 * msp: negative log-likelihood of the generated sequence under the record's
 *      scoring-policy distribution. Higher = more uncertain.
 * mte: mean Shannon entropy (natural log) of the per-step scoring-policy
 *      distributions.
 *
 * msp_raw aggregates the unnormalized per-step strategy scores instead
 * (-cum_strategy_score); penalized strategies can push it far outside the
 * [0, inf) range of a likelihood, which is reported as-is, never clamped.
 */

#include "declab/core/errors.hpp"
#include "declab/core/types.hpp"

namespace declab::uncertainty {

inline double msp(const core::GenerationRecord& record) {
  const auto& trace = record.output.log_prob_trace;
  if (trace.empty()) throw EmptyGenerationError("msp: no generated tokens");
  double nll = 0.0;
  for (double lp : trace) nll -= lp;
  return nll;
}

inline double mte(const core::GenerationRecord& record) {
  const auto& trace = record.output.entropy_trace;
  if (trace.empty()) throw EmptyGenerationError("mte: no generated tokens");
  double sum = 0.0;
  for (double h : trace) sum += h;
  return sum / static_cast<double>(trace.size());
}

inline double msp_raw(const core::GenerationRecord& record) {
  if (record.output.strategy_score_trace.empty())
    throw EmptyGenerationError("msp_raw: no generated tokens");
  return -record.output.cum_strategy_score;
}

/// Dispatch by method name ("msp" | "mte").
inline double score(const std::string& method, const core::GenerationRecord& record) {
  if (method == "msp") return msp(record);
  if (method == "mte") return mte(record);
  throw ConfigError("unknown uncertainty method: " + method);
}

}  // namespace declab::uncertainty
