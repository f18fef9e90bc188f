// Beam search and its diversity-grouped variant.
//
// Finished beams are frozen and compete with active extensions for the
// retained slots; ties break by (score, then lexicographic generated
// sequence). The grouped variant penalizes candidates against tokens already
// chosen by earlier groups at the same step and reports the best hypothesis
// across groups by raw cumulative log-probability, keeping the penalized
// total in cum_strategy_score.

#include "declab/decoding/decode.hpp"

#include "internal.hpp"

namespace declab::decoding {

using namespace detail;

namespace {

struct BeamEntry {
  core::Hypothesis hyp;
  bool done = false;
  core::FinishReason reason = core::FinishReason::max_tokens;
};

struct PoolItem {
  double rank = 0.0;          // cum_strategy_score after the extension
  std::vector<int> gen;       // generated tokens after the extension
  int parent = -1;            // index into the previous retained set
  int token = -1;             // extension token; -1 marks a frozen entry
  core::StepScores scores;
  core::FinishReason reason = core::FinishReason::max_tokens;
};

bool pool_less(const PoolItem& a, const PoolItem& b) {
  if (a.rank != b.rank) return a.rank > b.rank;
  return std::lexicographical_compare(a.gen.begin(), a.gen.end(), b.gen.begin(),
                                      b.gen.end());
}

/// Per-token strategy contributions for one beam's next step (plain beam:
/// the log-softmax itself; grouped: log-softmax minus the diversity penalty).
using ContribFn =
    std::function<std::vector<double>(const core::Hypothesis&, const std::vector<double>&)>;

std::vector<BeamEntry> beam_step(model::LogitProvider& provider,
                                 const std::vector<BeamEntry>& retained, int width,
                                 const DecodeConfig& cfg, int eos_id, int step_idx,
                                 const ContribFn& contrib_fn) {
  std::vector<PoolItem> pool;
  for (size_t i = 0; i < retained.size(); ++i) {
    const BeamEntry& entry = retained[i];
    if (!entry.done) continue;
    PoolItem frozen;
    frozen.rank = entry.hyp.cum_strategy_score;
    frozen.gen = entry.hyp.tokens.generated();
    frozen.parent = static_cast<int>(i);
    frozen.reason = entry.reason;
    pool.push_back(std::move(frozen));
  }

  for (size_t i = 0; i < retained.size(); ++i) {
    const BeamEntry& entry = retained[i];
    if (entry.done) continue;

    core::StepOutput so;
    try {
      so = model::step_checked(provider, entry.hyp.tokens);
    } catch (const std::exception& e) {
      throw DecodeError(step_idx, e.what());
    }
    std::vector<double> lsm = model::log_softmax(so.final_logits);
    double base_entropy = 0.0;
    for (double lp : lsm) base_entropy -= std::exp(lp) * lp;
    if (base_entropy < 0.0) base_entropy = 0.0;

    std::vector<double> contrib = contrib_fn(entry.hyp, lsm);
    double lse = model::logsumexp(contrib);
    double strat_entropy = 0.0;
    for (double s : contrib) {
      double lp = s - lse;
      strat_entropy -= std::exp(lp) * lp;
    }
    if (strat_entropy < 0.0) strat_entropy = 0.0;

    std::vector<int> base_gen = entry.hyp.tokens.generated();
    for (int y = 0; y < static_cast<int>(lsm.size()); ++y) {
      PoolItem item;
      item.rank = entry.hyp.cum_strategy_score + contrib[y];
      item.gen = base_gen;
      item.gen.push_back(y);
      item.parent = static_cast<int>(i);
      item.token = y;
      item.scores.model_log_prob = lsm[y];
      item.scores.strategy_score = contrib[y];
      if (cfg.policy == core::ScoringPolicy::base_distribution) {
        item.scores.policy_log_prob = lsm[y];
        item.scores.policy_entropy = base_entropy;
      } else {
        item.scores.policy_log_prob = contrib[y] - lse;
        item.scores.policy_entropy = strat_entropy;
      }
      pool.push_back(std::move(item));
    }
  }

  std::sort(pool.begin(), pool.end(), pool_less);
  if (static_cast<int>(pool.size()) > width) pool.resize(width);

  std::vector<BeamEntry> next;
  next.reserve(pool.size());
  for (PoolItem& item : pool) {
    BeamEntry entry = retained[item.parent];
    if (item.token >= 0) {
      entry.hyp.append_step(item.token, item.scores);
      if (item.token == eos_id) {
        entry.done = true;
        entry.reason = core::FinishReason::eos;
      } else if (entry.hyp.tokens.generated_len() >= cfg.max_new_tokens) {
        entry.done = true;
        entry.reason = core::FinishReason::max_tokens;
      }
    }
    next.push_back(std::move(entry));
  }
  return next;
}

bool all_done(const std::vector<BeamEntry>& entries) {
  for (const auto& e : entries)
    if (!e.done) return false;
  return true;
}

/// Best finished hypothesis by raw cumulative log-probability, ties by
/// lexicographic generated sequence.
const BeamEntry* best_entry(const std::vector<const BeamEntry*>& entries) {
  const BeamEntry* best = nullptr;
  std::vector<int> best_gen;
  for (const BeamEntry* e : entries) {
    std::vector<int> gen = e->hyp.tokens.generated();
    if (!best || e->hyp.cum_log_prob > best->hyp.cum_log_prob ||
        (e->hyp.cum_log_prob == best->hyp.cum_log_prob &&
         std::lexicographical_compare(gen.begin(), gen.end(), best_gen.begin(),
                                      best_gen.end()))) {
      best = e;
      best_gen = std::move(gen);
    }
  }
  return best;
}

core::GenerationRecord finalize(const BeamEntry& winner, const DecodeConfig& cfg,
                                const std::string& item_id) {
  core::GenerationRecord rec;
  rec.item_id = item_id;
  rec.strategy_id = cfg.id();
  rec.params = cfg.params();
  rec.scoring_policy = cfg.policy;
  rec.output = winner.hyp;
  rec.output.finished = true;
  rec.finish_reason = winner.reason;
  return rec;
}

}  // namespace

GenerationRecord decode_beam(LogitProvider& provider, const TokenSeq& prompt,
                             const DecodeConfig& cfg, const std::string& item_id) {
  cfg.validate();
  const int eos_id = provider.capabilities().vocab.eos_id;

  ContribFn plain = [](const core::Hypothesis&, const std::vector<double>& lsm) {
    return lsm;
  };

  std::vector<BeamEntry> retained{BeamEntry{core::Hypothesis(prompt)}};
  for (int t = 0; t < cfg.max_new_tokens && !all_done(retained); ++t)
    retained = beam_step(provider, retained, cfg.beam_k, cfg, eos_id, t, plain);

  std::vector<const BeamEntry*> view;
  for (const auto& e : retained) view.push_back(&e);
  return finalize(*best_entry(view), cfg, item_id);
}

GenerationRecord decode_dbs(LogitProvider& provider, const TokenSeq& prompt,
                            const DecodeConfig& cfg, const std::string& item_id) {
  cfg.validate();
  const int eos_id = provider.capabilities().vocab.eos_id;
  const int groups = cfg.dbs_groups;
  const int width = cfg.beam_k / groups;

  std::vector<std::vector<BeamEntry>> group_beams(
      groups, std::vector<BeamEntry>{BeamEntry{core::Hypothesis(prompt)}});

  for (int t = 0; t < cfg.max_new_tokens; ++t) {
    bool any_active = false;
    for (const auto& g : group_beams)
      if (!all_done(g)) any_active = true;
    if (!any_active) break;

    for (int g = 0; g < groups; ++g) {
      // Penalize against the beams earlier groups have already settled on at
      // this step (they were stepped first).
      ContribFn contrib_fn = [&, g](const core::Hypothesis& hyp,
                                    const std::vector<double>& lsm) {
        std::vector<double> contrib = lsm;
        if (g == 0 || cfg.dbs_lambda == 0.0) return contrib;
        std::vector<int> base_gen = hyp.tokens.generated();
        base_gen.push_back(0);
        for (int y = 0; y < static_cast<int>(lsm.size()); ++y) {
          base_gen.back() = y;
          double div = 0.0;
          for (int prev = 0; prev < g; ++prev)
            for (const BeamEntry& other : group_beams[prev])
              div += ngram_overlap(base_gen, other.hyp.tokens.generated(),
                                   cfg.dbs_delta_ngram);
          contrib[y] -= cfg.dbs_lambda * div;
        }
        return contrib;
      };
      group_beams[g] = beam_step(provider, group_beams[g], width, cfg, eos_id, t,
                                 contrib_fn);
    }
  }

  std::vector<const BeamEntry*> view;
  for (const auto& g : group_beams)
    for (const auto& e : g) view.push_back(&e);
  return finalize(*best_entry(view), cfg, item_id);
}

}  // namespace declab::decoding
