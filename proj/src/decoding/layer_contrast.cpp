// Layer-contrastive strategies: premature-vs-final layer decoding (dola) and
// logit self-evolution (sled).

#include "declab/decoding/decode.hpp"
#include "declab/decoding/jsd.hpp"

#include "internal.hpp"

namespace declab::decoding {

using namespace detail;

namespace {

ChoiceInfo greedy_choice(const core::StepOutput& so) {
  std::vector<double> lsm = model::log_softmax(so.final_logits);
  ChoiceInfo c;
  c.token = argmax_lowest(lsm);
  c.strategy_log_prob = lsm[c.token];
  double h = 0.0;
  for (double lp : lsm) h -= std::exp(lp) * lp;
  c.strategy_entropy = h < 0.0 ? 0.0 : h;
  c.raw_score = lsm[c.token];
  return c;
}

int argmax_support(const std::vector<double>& scores, const std::vector<int>& tokens) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(scores.size()); ++i) {
    if (scores[i] > scores[best] ||
        (scores[i] == scores[best] && tokens[i] < tokens[best]))
      best = i;
  }
  return best;
}

}  // namespace

GenerationRecord decode_dola(LogitProvider& provider, const TokenSeq& prompt,
                             const DecodeConfig& cfg, const std::string& item_id) {
  cfg.validate();
  const auto caps = provider.capabilities();
  if (!caps.exposes_layer_logits)
    throw CapabilityError("dola: provider does not expose layer logits");
  // Candidate premature layers: the configured bucket clipped to exclude the
  // final layer.
  const int lo = cfg.dola_layer_lo;
  const int hi = std::min(cfg.dola_layer_hi, caps.layer_count - 1);
  if (lo >= hi)
    throw ConfigError("dola: layer bucket [" + std::to_string(cfg.dola_layer_lo) + "," +
                      std::to_string(cfg.dola_layer_hi) + ") is empty for a " +
                      std::to_string(caps.layer_count) + "-layer provider");

  auto step = [cfg, lo, hi](const core::StepOutput& so, const core::TokenSeq&, int) {
    const auto& layers = *so.layer_logits;
    std::vector<double> pf = model::softmax(so.final_logits);

    int best_layer = lo;
    double best_jsd = -1.0;
    for (int l = lo; l < hi; ++l) {
      std::vector<double> pl = model::softmax(layers[l]);
      double d = jsd(pl, pf);
      if (d > best_jsd) {
        best_jsd = d;
        best_layer = l;
      }
    }
    if (best_jsd <= 0.0) {
      // All candidate layers agree with the final layer; contrast is
      // uninformative, emit the final-layer argmax.
      ChoiceInfo c = greedy_choice(so);
      c.layer = -1;
      return c;
    }

    double max_p = *std::max_element(pf.begin(), pf.end());
    double cut = cfg.dola_head_threshold * max_p;
    std::vector<int> head;
    for (int y = 0; y < static_cast<int>(pf.size()); ++y)
      if (pf[y] >= cut) head.push_back(y);

    std::vector<double> adj(head.size());
    for (size_t i = 0; i < head.size(); ++i)
      adj[i] = so.final_logits[head[i]] - layers[best_layer][head[i]];

    int pick = argmax_support(adj, head);
    SupportStats st = renorm_stats(adj, pick);
    ChoiceInfo c;
    c.token = head[pick];
    c.strategy_log_prob = st.log_prob;
    c.strategy_entropy = st.entropy;
    c.raw_score = adj[pick];
    c.layer = best_layer;
    return c;
  };
  return run_single_path(provider, prompt, cfg, {.layers = true, .hidden = false}, step,
                         item_id);
}

GenerationRecord decode_sled(LogitProvider& provider, const TokenSeq& prompt,
                             const DecodeConfig& cfg, const std::string& item_id) {
  cfg.validate();
  const auto caps = provider.capabilities();
  if (!caps.exposes_layer_logits)
    throw CapabilityError("sled: provider does not expose layer logits");

  auto step = [cfg](const core::StepOutput& so, const core::TokenSeq&, int) {
    const auto& layers = *so.layer_logits;
    const int n_layers = static_cast<int>(layers.size());
    std::vector<double> pf = model::softmax(so.final_logits);
    std::vector<int> cand = top_k_indices(pf, cfg.sled_n);

    // Mean premature-layer distribution (every layer below the final one).
    std::vector<double> mean_pl(pf.size(), 0.0);
    for (int l = 0; l < n_layers - 1; ++l) {
      std::vector<double> pl = model::softmax(layers[l]);
      for (size_t y = 0; y < pl.size(); ++y) mean_pl[y] += pl[y];
    }
    if (n_layers > 1)
      for (double& p : mean_pl) p /= double(n_layers - 1);

    // Evolve the logits along the contrast direction on the candidate set.
    std::vector<double> evolved = so.final_logits;
    for (int it = 0; it < cfg.sled_iterations; ++it) {
      std::vector<double> cur = model::softmax(evolved);
      for (int y : cand) evolved[y] += cfg.sled_alpha * (cur[y] - mean_pl[y]);
    }

    std::vector<double> score(cand.size());
    for (size_t i = 0; i < cand.size(); ++i) score[i] = evolved[cand[i]];
    int pick = argmax_support(score, cand);
    SupportStats st = renorm_stats(score, pick);
    ChoiceInfo c;
    c.token = cand[pick];
    c.strategy_log_prob = st.log_prob;
    c.strategy_entropy = st.entropy;
    c.raw_score = score[pick];
    return c;
  };
  return run_single_path(provider, prompt, cfg, {.layers = true, .hidden = false}, step,
                         item_id);
}

}  // namespace declab::decoding
