#pragma once

/**
 * The logit-provider contract.
 *
 * A provider maps a non-empty token context to one StepOutput: final-layer
 * logits over the vocabulary, plus per-layer logits and the newest position's
 * hidden state when requested and supported. The contract is flat and
 * step-at-a-time; providers may cache internally keyed by context.
 *
 * Determinism is part of the contract: two step calls with identical context
 * and flags must return element-wise identical output.
 */

#include "declab/core/types.hpp"
#include "declab/model/softmax.hpp"

#include <string>

namespace declab::model {

struct ModelCapabilities {
  bool exposes_layer_logits = false;
  bool exposes_hidden_states = false;
  int layer_count = 1;
  core::Vocabulary vocab;
  /// Safe for concurrent read-only step calls. Providers that are not leave
  /// the harness to serialize per-item decoding.
  bool concurrent_safe = false;
  /// Whether served hidden states are pre- or post-final-norm is left to the
  /// provider; recorded here as metadata only.
  std::string hidden_state_norm = "unspecified";
};

struct StepNeed {
  bool layers = false;
  bool hidden = false;
};

class LogitProvider {
public:
  virtual ~LogitProvider() = default;
  virtual ModelCapabilities capabilities() const = 0;
  virtual core::StepOutput step(const core::TokenSeq& context, StepNeed need) = 0;
};

/// Contract-checking wrapper around LogitProvider::step.
///
/// Validates the preconditions (non-empty context, requested capabilities
/// supported) and the postconditions (finite logits of length |V|, layer list
/// shape when present).
inline core::StepOutput step_checked(LogitProvider& provider,
                                     const core::TokenSeq& context,
                                     StepNeed need = {}) {
  const ModelCapabilities caps = provider.capabilities();
  if (context.ids.empty()) throw Error("step: empty context");
  if (!context.valid_for(caps.vocab)) throw Error("step: context token out of vocabulary");
  if (need.layers && !caps.exposes_layer_logits)
    throw CapabilityError("step: provider does not expose layer logits");
  if (need.hidden && !caps.exposes_hidden_states)
    throw CapabilityError("step: provider does not expose hidden states");

  core::StepOutput out = provider.step(context, need);

  if (static_cast<int>(out.final_logits.size()) != caps.vocab.size)
    throw Error("step: final_logits length != vocabulary size");
  check_finite(out.final_logits, "step: final_logits");
  if (need.layers) {
    if (!out.layer_logits || out.layer_logits->empty())
      throw CapabilityError("step: layer logits requested but absent");
    for (const auto& layer : *out.layer_logits) {
      if (layer.size() != out.final_logits.size())
        throw Error("step: layer logit vector length mismatch");
      check_finite(layer, "step: layer_logits");
    }
  }
  if (need.hidden && (!out.hidden_state || out.hidden_state->empty()))
    throw CapabilityError("step: hidden state requested but absent");
  return out;
}

}  // namespace declab::model
