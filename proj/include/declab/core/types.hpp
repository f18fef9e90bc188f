#pragma once

/**
 * Domain types shared by every other module.
 *
 * All types here are immutable-by-convention value types with no I/O and no
 * model logic; they are safe to copy, share, and send between threads.
 *
 * Probabilities are stored as natural-log values internally and exponentiated
 * only at API edges (JSON serialization, prob_trace()). Cumulative scores are
 * sums of per-step log-space contributions.
 */

#include "declab/core/errors.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace declab::core {

// ============================================================================
// Vocabulary & token sequences
// ============================================================================

/// Token id space plus the id that terminates generation.
struct Vocabulary {
  int size = 0;
  int eos_id = 0;

  void validate() const {
    if (size < 2) throw ConfigError("vocabulary size must be >= 2");
    if (eos_id < 0 || eos_id >= size)
      throw ConfigError("eos_id out of range: " + std::to_string(eos_id));
  }

  bool operator==(const Vocabulary&) const = default;
};

/// An ordered token id sequence; ids[0..prompt_len) is the prompt, the rest
/// is generated continuation.
struct TokenSeq {
  std::vector<int> ids;
  int prompt_len = 0;

  TokenSeq() = default;
  explicit TokenSeq(std::vector<int> prompt)
      : ids(std::move(prompt)), prompt_len(static_cast<int>(ids.size())) {}

  int generated_len() const { return static_cast<int>(ids.size()) - prompt_len; }

  std::vector<int> generated() const {
    return std::vector<int>(ids.begin() + prompt_len, ids.end());
  }

  bool valid_for(const Vocabulary& vocab) const {
    for (int id : ids)
      if (id < 0 || id >= vocab.size) return false;
    return prompt_len >= 0 && prompt_len <= static_cast<int>(ids.size());
  }

  bool operator==(const TokenSeq&) const = default;
};

// ============================================================================
// Model step output
// ============================================================================

/// One decoding step's view of the model: final logits, optionally per-layer
/// logits (final layer last) and the last hidden state of the newest position.
struct StepOutput {
  std::vector<double> final_logits;
  std::optional<std::vector<std::vector<double>>> layer_logits;
  std::optional<std::vector<double>> hidden_state;
  int layer_count = 1;

  bool operator==(const StepOutput&) const = default;
};

// ============================================================================
// Hypotheses & generation records
// ============================================================================

/// Which per-step distribution feeds the probability/entropy traces:
/// the (renormalized) distribution the strategy argmaxed or sampled over,
/// or the untouched final-layer softmax.
enum class ScoringPolicy { strategy_distribution, base_distribution };

/// Per-step scores produced by a decoding strategy for the chosen token.
struct StepScores {
  double policy_log_prob = 0.0;  // ln of the scoring-policy distribution at the token
  double policy_entropy = 0.0;   // entropy of that distribution
  double strategy_score = 0.0;   // raw (unnormalized) per-step strategy contribution
  double model_log_prob = 0.0;   // ln softmax(final_logits) at the token
};

/// A partial or finished sequence with its accumulated scores and per-step
/// traces. Traces cover generated tokens only; prompt tokens are excluded.
struct Hypothesis {
  TokenSeq tokens;
  double cum_strategy_score = 0.0;  // sum of strategy_score_trace
  double cum_log_prob = 0.0;        // sum of model log-probs of generated tokens
  std::vector<double> log_prob_trace;
  std::vector<double> entropy_trace;
  std::vector<double> strategy_score_trace;
  std::optional<std::vector<std::vector<double>>> hidden_trace;
  bool finished = false;

  Hypothesis() = default;
  explicit Hypothesis(TokenSeq prompt) : tokens(std::move(prompt)) {}

  /// Appends one generated token and keeps every trace in lockstep.
  void append_step(int token, const StepScores& s,
                   std::optional<std::vector<double>> hidden = std::nullopt) {
    tokens.ids.push_back(token);
    log_prob_trace.push_back(s.policy_log_prob);
    entropy_trace.push_back(s.policy_entropy);
    strategy_score_trace.push_back(s.strategy_score);
    cum_strategy_score += s.strategy_score;
    cum_log_prob += s.model_log_prob;
    if (hidden) {
      if (!hidden_trace) hidden_trace.emplace();
      hidden_trace->push_back(std::move(*hidden));
    }
  }

  int steps() const { return static_cast<int>(log_prob_trace.size()); }

  /// Per-step chosen-token probabilities (exponentiated at the API edge).
  std::vector<double> prob_trace() const {
    std::vector<double> out;
    out.reserve(log_prob_trace.size());
    for (double lp : log_prob_trace) out.push_back(std::exp(lp));
    return out;
  }

  bool operator==(const Hypothesis&) const = default;
};

enum class FinishReason { eos, max_tokens };

/// A finished output: which item and strategy produced it, the hypothesis,
/// and strategy-specific per-step annotations.
struct GenerationRecord {
  std::string item_id;
  std::string strategy_id;
  std::map<std::string, double> params;
  Hypothesis output;
  ScoringPolicy scoring_policy = ScoringPolicy::strategy_distribution;
  FinishReason finish_reason = FinishReason::max_tokens;
  std::string text;                  // detokenized continuation, empty without a codec
  std::vector<int> fallback_steps;   // steps where a degenerate-case fallback fired
  std::vector<int> layer_trace;      // chosen premature layer per step (-1 = fallback)
  std::vector<double> penalty_trace; // degeneration penalty per step, when applicable

  bool operator==(const GenerationRecord&) const = default;
};

// ============================================================================
// Evaluation records
// ============================================================================

/// One dataset item's uncertainty score and raw/normalized quality scores.
struct EvalRecord {
  std::string item_id;
  double uncertainty = 0.0;
  std::map<std::string, double> quality_raw;
  std::map<std::string, double> quality_norm;  // values in [0,1]

  bool operator==(const EvalRecord&) const = default;
};

/// Prediction-rejection ratio plus the curve areas and bootstrap statistics
/// behind it.
struct PRRResult {
  double prr = 0.0;
  double area_uns = 0.0;
  double area_orc = 0.0;
  double area_rand = 0.0;
  int n_items = 0;
  double boot_mean = 0.0;
  double boot_sd = 0.0;
  int n_boot = 0;

  bool operator==(const PRRResult&) const = default;
};

// ============================================================================
// Enum <-> string helpers
// ============================================================================

inline std::string to_string(ScoringPolicy p) {
  return p == ScoringPolicy::strategy_distribution ? "strategy-distribution"
                                                   : "base-distribution";
}

inline ScoringPolicy scoring_policy_from_string(const std::string& s) {
  if (s == "strategy-distribution") return ScoringPolicy::strategy_distribution;
  if (s == "base-distribution") return ScoringPolicy::base_distribution;
  throw ConfigError("unknown scoring policy: " + s);
}

inline std::string to_string(FinishReason r) {
  return r == FinishReason::eos ? "eos" : "max_tokens";
}

inline FinishReason finish_reason_from_string(const std::string& s) {
  if (s == "eos") return FinishReason::eos;
  if (s == "max_tokens") return FinishReason::max_tokens;
  throw ConfigError("unknown finish reason: " + s);
}

}  // namespace declab::core
