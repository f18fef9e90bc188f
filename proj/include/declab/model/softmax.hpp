#pragma once

/**
 * Numerically guarded softmax and friends.
 *
 * All functions subtract the max before exponentiating, so adding a constant
 * to every logit leaves the result unchanged (within 1e-12) and no finite
 * input can overflow.
 */

#include "declab/core/errors.hpp"

#include <cmath>
#include <span>
#include <vector>

namespace declab::model {

inline double logsumexp(std::span<const double> xs) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double x : xs)
    if (x > mx) mx = x;
  if (!std::isfinite(mx)) return mx;  // all -inf
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x - mx);
  return mx + std::log(sum);
}

/// softmax(logits): entries positive, sum = 1 within 1e-12.
inline std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> out(logits.size());
  double mx = -std::numeric_limits<double>::infinity();
  for (double z : logits)
    if (z > mx) mx = z;
  double sum = 0.0;
  for (size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - mx);
    sum += out[i];
  }
  for (double& p : out) p /= sum;
  return out;
}

/// log softmax(logits), elementwise.
inline std::vector<double> log_softmax(std::span<const double> logits) {
  double lse = logsumexp(logits);
  std::vector<double> out(logits.size());
  for (size_t i = 0; i < logits.size(); ++i) out[i] = logits[i] - lse;
  return out;
}

/// Shannon entropy of a probability vector, natural log. 0 * ln 0 counts as 0.
inline double entropy(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs)
    if (p > 0.0) h -= p * std::log(p);
  return h;
}

inline void check_finite(std::span<const double> xs, const char* what) {
  for (double x : xs)
    if (!std::isfinite(x)) throw Error(std::string(what) + ": non-finite entry");
}

}  // namespace declab::model
