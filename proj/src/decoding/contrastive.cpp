// Contrastive search (hidden-state degeneration penalty), contrastive
// decoding (expert vs amateur logits), and the two FSD variants (prefix
// anti-LM mixtures).

#include "declab/decoding/anti_lm.hpp"
#include "declab/decoding/decode.hpp"

#include "internal.hpp"

#include <map>
#include <memory>

namespace declab::decoding {

using namespace detail;

namespace {

// Chooses among support scores with (value desc, token id asc) and returns
// the position inside the support.
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

GenerationRecord decode_cs(LogitProvider& provider, const TokenSeq& prompt,
                           const DecodeConfig& cfg, const std::string& item_id) {
  cfg.validate();
  if (!provider.capabilities().exposes_hidden_states)
    throw CapabilityError("cs: provider does not expose hidden states");

  // Hidden states of every prompt prefix; generated-token hiddens are
  // appended as they are chosen so the penalty sees all preceding positions.
  auto hiddens = std::make_shared<std::vector<std::vector<double>>>();
  for (size_t i = 1; i <= prompt.ids.size(); ++i) {
    core::TokenSeq prefix(std::vector<int>(prompt.ids.begin(), prompt.ids.begin() + i));
    auto so = model::step_checked(provider, prefix, {.layers = false, .hidden = true});
    hiddens->push_back(*so.hidden_state);
  }

  auto step = [&provider, hiddens, cfg](const core::StepOutput& so,
                                        const core::TokenSeq& ctx, int) {
    std::vector<double> probs = model::softmax(so.final_logits);
    std::vector<int> cand = top_k_indices(probs, cfg.cs_k);

    std::vector<double> objective(cand.size());
    std::vector<double> penalty(cand.size());
    std::vector<std::vector<double>> cand_hidden(cand.size());
    for (size_t i = 0; i < cand.size(); ++i) {
      core::TokenSeq look = ctx;
      look.ids.push_back(cand[i]);
      auto so_y = model::step_checked(provider, look, {.layers = false, .hidden = true});
      cand_hidden[i] = *so_y.hidden_state;
      double max_cos = -1.0;
      for (const auto& h : *hiddens) max_cos = std::max(max_cos, cosine(cand_hidden[i], h));
      if (hiddens->empty()) max_cos = 0.0;
      penalty[i] = max_cos;
      objective[i] = (1.0 - cfg.cs_alpha) * probs[cand[i]] - cfg.cs_alpha * max_cos;
    }

    int pick = argmax_support(objective, cand);
    SupportStats st = renorm_stats(objective, pick);

    ChoiceInfo c;
    c.token = cand[pick];
    c.strategy_log_prob = st.log_prob;
    c.strategy_entropy = st.entropy;
    c.raw_score = objective[pick];
    c.penalty = penalty[pick];
    c.hidden = cand_hidden[pick];
    hiddens->push_back(cand_hidden[pick]);
    return c;
  };
  return run_single_path(provider, prompt, cfg, {}, step, item_id);
}

GenerationRecord decode_cd(LogitProvider& expert, LogitProvider& amateur,
                           const TokenSeq& prompt, const DecodeConfig& cfg,
                           const std::string& item_id) {
  cfg.validate();
  if (expert.capabilities().vocab.size != amateur.capabilities().vocab.size)
    throw VocabMismatchError("cd: expert and amateur vocabulary sizes differ");

  auto step = [&amateur, cfg](const core::StepOutput& so, const core::TokenSeq& ctx,
                              int) {
    core::StepOutput am = model::step_checked(amateur, ctx, {});
    std::vector<double> pe = model::softmax(so.final_logits);
    std::vector<double> pa = model::softmax(am.final_logits);
    double pa_max = *std::max_element(pa.begin(), pa.end());
    double cutoff = cfg.cd_alpha_head * pa_max;

    std::vector<int> head;
    for (int y = 0; y < static_cast<int>(pe.size()); ++y)
      if (pe[y] > cutoff) head.push_back(y);

    ChoiceInfo c;
    if (head.empty()) {
      // Degenerate head: fall back to the expert argmax and flag the step.
      std::vector<double> lsm = model::log_softmax(so.final_logits);
      c.token = argmax_lowest(lsm);
      c.strategy_log_prob = lsm[c.token];
      double h = 0.0;
      for (double lp : lsm) h -= std::exp(lp) * lp;
      c.strategy_entropy = h < 0.0 ? 0.0 : h;
      c.raw_score = lsm[c.token];
      c.fallback = true;
      return c;
    }

    std::vector<double> score(head.size());
    for (size_t i = 0; i < head.size(); ++i)
      score[i] = (1.0 - cfg.cd_beta) * so.final_logits[head[i]] -
                 cfg.cd_beta * am.final_logits[head[i]];
    int pick = argmax_support(score, head);
    SupportStats st = renorm_stats(score, pick);
    c.token = head[pick];
    c.strategy_log_prob = st.log_prob;
    c.strategy_entropy = st.entropy;
    c.raw_score = score[pick];
    return c;
  };
  return run_single_path(expert, prompt, cfg, {}, step, item_id);
}

GenerationRecord decode_fsd(LogitProvider& provider, const TokenSeq& prompt,
                            const DecodeConfig& cfg, const std::string& item_id) {
  cfg.validate();
  const core::Vocabulary vocab = provider.capabilities().vocab;
  const bool vectorized = cfg.strategy == Strategy::fsd_vec;
  if (vectorized && !provider.capabilities().exposes_hidden_states)
    throw CapabilityError("fsd_vec: provider does not expose hidden states");

  auto anti = std::make_shared<AntiNgramLM>(cfg.fsd_n, vocab.size);
  // Token embedding table for the vectorized variant, filled lazily from the
  // provider's hidden state of each single-token context.
  auto embeddings = std::make_shared<std::map<int, std::vector<double>>>();
  auto embed = [&provider, embeddings](int token) -> const std::vector<double>& {
    auto it = embeddings->find(token);
    if (it == embeddings->end()) {
      core::TokenSeq single(std::vector<int>{token});
      auto so = model::step_checked(provider, single, {.layers = false, .hidden = true});
      it = embeddings->emplace(token, *so.hidden_state).first;
    }
    return it->second;
  };

  auto step = [cfg, anti, embed, vectorized](const core::StepOutput& so,
                                             const core::TokenSeq& ctx, int) {
    std::vector<double> probs = model::softmax(so.final_logits);
    std::vector<int> cand = top_k_indices(probs, cfg.fsd_n);

    std::vector<double> anti_probs(cand.size());
    if (vectorized) {
      // Mean embedding of the last n context tokens; anti probability is the
      // softmax of candidate-to-window cosine similarities.
      size_t win = std::min<size_t>(cfg.fsd_n, ctx.ids.size());
      std::vector<double> mean;
      for (size_t i = ctx.ids.size() - win; i < ctx.ids.size(); ++i) {
        const auto& e = embed(ctx.ids[i]);
        if (mean.empty()) mean.assign(e.size(), 0.0);
        for (size_t d = 0; d < e.size(); ++d) mean[d] += e[d];
      }
      for (double& m : mean) m /= double(win);
      std::vector<double> sims(cand.size());
      for (size_t i = 0; i < cand.size(); ++i) sims[i] = cosine(embed(cand[i]), mean);
      anti_probs = model::softmax(sims);
    } else {
      anti->sync(ctx.ids);
      for (size_t i = 0; i < cand.size(); ++i) anti_probs[i] = anti->prob(cand[i]);
    }

    std::vector<double> score(cand.size());
    for (size_t i = 0; i < cand.size(); ++i)
      score[i] = (1.0 - cfg.fsd_alpha) * probs[cand[i]] - cfg.fsd_alpha * anti_probs[i];

    int pick = argmax_support(score, cand);
    SupportStats st = renorm_stats(score, pick);
    ChoiceInfo c;
    c.token = cand[pick];
    c.strategy_log_prob = st.log_prob;
    c.strategy_entropy = st.entropy;
    c.raw_score = score[pick];
    return c;
  };
  return run_single_path(provider, prompt, cfg, {}, step, item_id);
}

}  // namespace declab::decoding
