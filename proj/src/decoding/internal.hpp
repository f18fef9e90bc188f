#pragma once

// Shared machinery for the decoding strategies. Not installed; strategies
// include this from src/decoding only.

#include "declab/core/types.hpp"
#include "declab/decoding/config.hpp"
#include "declab/model/provider.hpp"
#include "declab/model/synthetic_lm.hpp"  // splitmix64 / hash_to_unit

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace declab::decoding::detail {

constexpr int kNoLayer = std::numeric_limits<int>::min();

inline uint64_t fnv1a(const std::string& s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Deterministic uniform [0,1) stream; one splitmix64 step per draw.
struct UniformStream {
  uint64_t state;
  explicit UniformStream(uint64_t seed) : state(seed) {}
  double next() {
    state = model::splitmix64(state);
    return model::hash_to_unit(state);
  }
};

/// Index of the maximum value; ties go to the lowest index.
inline int argmax_lowest(std::span<const double> xs) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(xs.size()); ++i)
    if (xs[i] > xs[best]) best = i;
  return best;
}

/// Indices of the k largest values, ordered by (value desc, index asc).
inline std::vector<int> top_k_indices(std::span<const double> values, int k) {
  std::vector<int> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (values[a] != values[b]) return values[a] > values[b];
    return a < b;
  });
  idx.resize(std::min<size_t>(k, idx.size()));
  return idx;
}

/// Log-probability at `chosen` and entropy of softmax(scores) over an
/// arbitrary support of score values.
struct SupportStats {
  double log_prob = 0.0;
  double entropy = 0.0;
};

inline SupportStats renorm_stats(std::span<const double> scores, int chosen) {
  double lse = model::logsumexp(scores);
  SupportStats st;
  st.log_prob = scores[chosen] - lse;
  for (double s : scores) {
    double lp = s - lse;
    st.entropy -= std::exp(lp) * lp;
  }
  // Clamp the tiny negative values float error can produce on one-hot supports.
  if (st.entropy < 0.0) st.entropy = 0.0;
  return st;
}

inline double cosine(std::span<const double> a, std::span<const double> b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

/// What a single-path strategy reports for one step.
struct ChoiceInfo {
  int token = 0;
  double strategy_log_prob = 0.0;  // ln renormalized strategy distribution at token
  double strategy_entropy = 0.0;
  double raw_score = 0.0;          // unnormalized per-step contribution
  std::optional<std::vector<double>> hidden;
  bool fallback = false;
  int layer = kNoLayer;
  std::optional<double> penalty;
};

using StepFn = std::function<ChoiceInfo(const core::StepOutput&, const core::TokenSeq&, int)>;

/// Shared loop for every single-path strategy: steps the provider, lets the
/// strategy choose, fills traces per the scoring policy, and handles
/// eos / max_new_tokens termination. Provider failures are rethrown as
/// DecodeError with the step index attached.
core::GenerationRecord run_single_path(model::LogitProvider& provider,
                                       const core::TokenSeq& prompt,
                                       const DecodeConfig& cfg,
                                       model::StepNeed need, const StepFn& step_fn,
                                       const std::string& item_id);

/// Unigram (or n-gram) overlap count between two token sequences:
/// sum over shared n-grams of min(count_a, count_b).
double ngram_overlap(const std::vector<int>& a, const std::vector<int>& b, int n);

}  // namespace declab::decoding::detail
