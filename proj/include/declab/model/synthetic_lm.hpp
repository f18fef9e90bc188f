#pragma once

/**
 * SyntheticLayeredLM: a seed-derived toy model exposing per-layer logits and
 * hidden states, for exercising layer-contrastive and hidden-state decoding
 * paths without any real weights.
 *
 * All outputs are pure functions of (seed, context, layer), so identical
 * calls are bitwise identical.
 */

#include "declab/model/provider.hpp"

#include <cmath>
#include <cstdint>

namespace declab::model {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Uniform double in [0, 1) from a hash value.
inline double hash_to_unit(uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

class SyntheticLayeredLM : public LogitProvider {
public:
  SyntheticLayeredLM(uint64_t seed, core::Vocabulary vocab, int layer_count,
                     int hidden_dim = 8)
      : seed_(seed), vocab_(vocab), layers_(layer_count), hidden_dim_(hidden_dim) {
    vocab_.validate();
    if (layers_ < 1) throw ConfigError("SyntheticLayeredLM needs >= 1 layer");
    if (hidden_dim_ < 1) throw ConfigError("SyntheticLayeredLM needs hidden_dim >= 1");
  }

  ModelCapabilities capabilities() const override {
    ModelCapabilities caps;
    caps.exposes_layer_logits = layers_ >= 2;
    caps.exposes_hidden_states = true;
    caps.layer_count = layers_;
    caps.vocab = vocab_;
    caps.concurrent_safe = true;
    return caps;
  }

  core::StepOutput step(const core::TokenSeq& context, StepNeed need) override {
    core::StepOutput out;
    out.layer_count = layers_;
    uint64_t ctx = context_hash(context.ids);
    out.final_logits = layer_logits(ctx, layers_ - 1);
    if (need.layers) {
      out.layer_logits.emplace();
      for (int l = 0; l < layers_; ++l) out.layer_logits->push_back(layer_logits(ctx, l));
    }
    if (need.hidden) out.hidden_state = hidden_state(ctx);
    return out;
  }

private:
  uint64_t context_hash(const std::vector<int>& ids) const {
    uint64_t h = splitmix64(seed_ ^ 0x5eedULL);
    for (int id : ids) h = splitmix64(h ^ static_cast<uint64_t>(id + 1));
    return h;
  }

  std::vector<double> layer_logits(uint64_t ctx, int layer) const {
    std::vector<double> z(vocab_.size);
    uint64_t base = splitmix64(ctx ^ (static_cast<uint64_t>(layer + 1) << 32));
    for (int v = 0; v < vocab_.size; ++v)
      z[v] = 6.0 * hash_to_unit(splitmix64(base ^ static_cast<uint64_t>(v + 1))) - 3.0;
    return z;
  }

  std::vector<double> hidden_state(uint64_t ctx) const {
    std::vector<double> h(hidden_dim_);
    uint64_t base = splitmix64(ctx ^ 0x41ddeULL);
    double norm = 0.0;
    for (int i = 0; i < hidden_dim_; ++i) {
      h[i] = 2.0 * hash_to_unit(splitmix64(base ^ static_cast<uint64_t>(i + 1))) - 1.0;
      norm += h[i] * h[i];
    }
    norm = std::sqrt(norm);
    if (norm > 0.0)
      for (double& x : h) x /= norm;
    return h;
  }

  uint64_t seed_;
  core::Vocabulary vocab_;
  int layers_;
  int hidden_dim_;
};

}  // namespace declab::model
