#include "declab/decoding/decode.hpp"

#include "internal.hpp"

#include <memory>

namespace declab::decoding {

using namespace detail;

GenerationRecord decode_greedy(LogitProvider& provider, const TokenSeq& prompt,
                               const DecodeConfig& cfg, const std::string& item_id) {
  auto step = [](const core::StepOutput& so, const core::TokenSeq&, int) {
    std::vector<double> lsm = model::log_softmax(so.final_logits);
    ChoiceInfo c;
    c.token = argmax_lowest(lsm);
    c.strategy_log_prob = lsm[c.token];
    double h = 0.0;
    for (double lp : lsm) h -= std::exp(lp) * lp;
    c.strategy_entropy = h < 0.0 ? 0.0 : h;
    c.raw_score = lsm[c.token];
    return c;
  };
  return run_single_path(provider, prompt, cfg, {}, step, item_id);
}

GenerationRecord decode_sampled(LogitProvider& provider, const TokenSeq& prompt,
                                const DecodeConfig& cfg, const std::string& item_id) {
  cfg.validate();
  if (cfg.strategy != Strategy::temperature && cfg.strategy != Strategy::top_p)
    throw ConfigError("decode_sampled expects a sampling strategy");

  auto rng = std::make_shared<UniformStream>(sampling_seed(cfg.seed, item_id));
  const bool is_temperature = cfg.strategy == Strategy::temperature;

  auto step = [rng, cfg, is_temperature](const core::StepOutput& so,
                                         const core::TokenSeq&, int) {
    ChoiceInfo c;
    if (is_temperature) {
      std::vector<double> scaled(so.final_logits);
      for (double& z : scaled) z /= cfg.temperature;
      std::vector<double> probs = model::softmax(scaled);
      double u = rng->next();
      double cum = 0.0;
      int chosen = static_cast<int>(probs.size()) - 1;
      for (int i = 0; i < static_cast<int>(probs.size()); ++i) {
        cum += probs[i];
        if (u < cum) {
          chosen = i;
          break;
        }
      }
      c.token = chosen;
      c.strategy_log_prob = std::log(probs[chosen]);
      c.strategy_entropy = model::entropy(probs);
      c.raw_score = c.strategy_log_prob;
    } else {
      // Nucleus: smallest prefix of probability-sorted tokens with mass >= p,
      // renormalized. Sorting ties broken by token id for determinism.
      std::vector<double> probs = model::softmax(so.final_logits);
      std::vector<int> order = top_k_indices(probs, static_cast<int>(probs.size()));
      double mass = 0.0;
      size_t cut = 0;
      while (cut < order.size()) {
        mass += probs[order[cut]];
        ++cut;
        if (mass >= cfg.top_p) break;
      }
      double u = rng->next() * mass;
      double cum = 0.0;
      int chosen = order[cut - 1];
      for (size_t i = 0; i < cut; ++i) {
        cum += probs[order[i]];
        if (u < cum) {
          chosen = order[i];
          break;
        }
      }
      c.token = chosen;
      c.strategy_log_prob = std::log(probs[chosen] / mass);
      double h = 0.0;
      for (size_t i = 0; i < cut; ++i) {
        double p = probs[order[i]] / mass;
        if (p > 0.0) h -= p * std::log(p);
      }
      c.strategy_entropy = h;
      c.raw_score = c.strategy_log_prob;
    }
    return c;
  };
  return run_single_path(provider, prompt, cfg, {}, step, item_id);
}

}  // namespace declab::decoding
