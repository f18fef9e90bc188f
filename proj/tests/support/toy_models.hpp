#pragma once

// Deterministic toy model builders shared by the unit and acceptance suites.

#include "declab/model/provider.hpp"
#include "declab/model/synthetic_lm.hpp"
#include "declab/model/table_lm.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace declab::testing {

/// Sequential uniform [0,1) draws from a splitmix64 chain.
class TestRng {
public:
  explicit TestRng(uint64_t seed) : state_(seed) {}
  double next() {
    state_ = model::splitmix64(state_);
    return model::hash_to_unit(state_);
  }
  uint64_t next_u64() {
    state_ = model::splitmix64(state_);
    return state_;
  }

private:
  uint64_t state_;
};

inline std::vector<double> random_distribution(TestRng& rng, int size) {
  std::vector<double> p(size);
  double sum = 0.0;
  for (double& x : p) {
    x = -std::log(1.0 - rng.next());
    sum += x;
  }
  double renorm = 0.0;
  for (double& x : p) {
    x /= sum;
    renorm += x;
  }
  // Absorb rounding into the last entry so rows sum to 1 exactly.
  p.back() += 1.0 - renorm;
  return p;
}

/// TableLM with a random row for every context of length <= order (so the
/// uniform fallback never fires for in-range contexts).
inline model::TableLM random_table_lm(uint64_t seed, int vocab_size, int order,
                                      int eos_id = 0) {
  TestRng rng(seed);
  model::TableLM lm(core::Vocabulary{vocab_size, eos_id}, order);
  std::vector<std::vector<int>> contexts{{}};
  for (int len = 1; len <= order; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& ctx : contexts) {
      if (static_cast<int>(ctx.size()) == len - 1) {
        for (int v = 0; v < vocab_size; ++v) {
          std::vector<int> extended = ctx;
          extended.push_back(v);
          next.push_back(extended);
        }
      }
    }
    for (auto& ctx : next) lm.set_row(ctx, random_distribution(rng, vocab_size));
    contexts = std::move(next);
  }
  return lm;
}

/// A provider with one high-probability self-loop token, hidden states that
/// repeat with it, and a small random remainder: greedy loops, strategies
/// with a degeneration penalty escape.
class RepetitionProneLM : public model::LogitProvider {
public:
  RepetitionProneLM(uint64_t seed, int vocab_size = 8, int hidden_dim = 6,
                    double loop_prob = 0.6)
      : vocab_{vocab_size, /*eos_id=*/vocab_size - 1},
        loop_token_(1),
        loop_prob_(loop_prob),
        hidden_dim_(hidden_dim),
        seed_(seed) {
    TestRng rng(seed);
    embeddings_.resize(vocab_size);
    for (int v = 0; v < vocab_size; ++v) {
      embeddings_[v].resize(hidden_dim_);
      double norm = 0.0;
      for (double& x : embeddings_[v]) {
        x = 2.0 * rng.next() - 1.0;
        norm += x * x;
      }
      norm = std::sqrt(norm);
      for (double& x : embeddings_[v]) x /= norm;
    }
  }

  model::ModelCapabilities capabilities() const override {
    model::ModelCapabilities caps;
    caps.exposes_hidden_states = true;
    caps.layer_count = 1;
    caps.vocab = vocab_;
    caps.concurrent_safe = true;
    return caps;
  }

  core::StepOutput step(const core::TokenSeq& context, model::StepNeed need) override {
    core::StepOutput out;
    out.layer_count = 1;
    // The loop token dominates; the rest share the remainder with a small
    // context-dependent perturbation (eos gets very little mass).
    std::vector<double> probs(vocab_.size, 0.0);
    probs[loop_token_] = loop_prob_;
    uint64_t h = seed_;
    for (int id : context.ids) h = model::splitmix64(h ^ uint64_t(id + 1));
    double rest = 1.0 - loop_prob_;
    double weight_sum = 0.0;
    std::vector<double> weights(vocab_.size, 0.0);
    for (int v = 0; v < vocab_.size; ++v) {
      if (v == loop_token_) continue;
      double w = model::hash_to_unit(model::splitmix64(h ^ uint64_t(v + 17))) + 0.05;
      if (v == vocab_.eos_id) w *= 0.05;
      weights[v] = w;
      weight_sum += w;
    }
    for (int v = 0; v < vocab_.size; ++v)
      if (v != loop_token_) probs[v] = rest * weights[v] / weight_sum;
    out.final_logits.resize(vocab_.size);
    for (int v = 0; v < vocab_.size; ++v) out.final_logits[v] = std::log(probs[v]);
    if (need.hidden) out.hidden_state = embeddings_[size_t(context.ids.back())];
    return out;
  }

private:
  core::Vocabulary vocab_;
  int loop_token_;
  double loop_prob_;
  int hidden_dim_;
  uint64_t seed_;
  std::vector<std::vector<double>> embeddings_;
};

/// Exhaustive max-log-prob search over all sequences of length <= max_len
/// (stopping early at eos), with the same tie rule as the decoders: higher
/// total log-prob wins, ties go to the lexicographically smaller sequence.
/// Independent of the beam implementation.
inline std::vector<int> exhaustive_best_sequence(model::LogitProvider& provider,
                                                 const core::TokenSeq& prompt,
                                                 int max_len) {
  const core::Vocabulary vocab = provider.capabilities().vocab;
  std::vector<int> best_seq;
  double best_score = -std::numeric_limits<double>::infinity();

  struct Frame {
    core::TokenSeq ctx;
    std::vector<int> gen;
    double score;
  };
  std::vector<Frame> stack{{prompt, {}, 0.0}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    core::StepOutput so = model::step_checked(provider, f.ctx);
    std::vector<double> lsm = model::log_softmax(so.final_logits);
    for (int y = 0; y < vocab.size; ++y) {
      double score = f.score + lsm[y];
      std::vector<int> gen = f.gen;
      gen.push_back(y);
      bool terminal = (y == vocab.eos_id) ||
                      (static_cast<int>(gen.size()) >= max_len);
      if (terminal) {
        if (score > best_score ||
            (score == best_score &&
             std::lexicographical_compare(gen.begin(), gen.end(), best_seq.begin(),
                                          best_seq.end()))) {
          best_score = score;
          best_seq = gen;
        }
      } else {
        Frame child;
        child.ctx = f.ctx;
        child.ctx.ids.push_back(y);
        child.gen = std::move(gen);
        child.score = score;
        stack.push_back(std::move(child));
      }
    }
  }
  return best_seq;
}

}  // namespace declab::testing
