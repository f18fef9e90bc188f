#include "internal.hpp"

#include "declab/core/errors.hpp"
#include "declab/decoding/decode.hpp"

#include <map>
#include <sstream>

namespace declab::decoding {

std::string DecodeConfig::param_id() const {
  std::map<std::string, double> ps = params();
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, value] : ps) {
    if (!first) out << ',';
    first = false;
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    out << key << '=' << buf;
  }
  return out.str();
}

uint64_t sampling_seed(uint64_t config_seed, const std::string& item_id) {
  return model::splitmix64(config_seed ^ detail::fnv1a(item_id));
}

std::vector<Strategy> all_strategies() {
  return {Strategy::greedy, Strategy::beam,   Strategy::dbs,  Strategy::cs,
          Strategy::cd,     Strategy::fsd,    Strategy::fsd_vec,
          Strategy::dola,   Strategy::sled,   Strategy::temperature,
          Strategy::top_p};
}

std::vector<DecodeConfig> default_grid(Strategy s, int layer_count) {
  std::vector<DecodeConfig> grid;
  auto base = [&] {
    DecodeConfig cfg;
    cfg.strategy = s;
    return cfg;
  };
  switch (s) {
    case Strategy::greedy: {
      grid.push_back(base());
      break;
    }
    case Strategy::beam: {
      for (int k : {3, 5, 7}) {
        DecodeConfig cfg = base();
        cfg.beam_k = k;
        grid.push_back(cfg);
      }
      break;
    }
    case Strategy::dbs: {
      const std::pair<int, int> pairs[] = {{3, 3}, {6, 3}, {9, 3}, {6, 6}, {12, 6}};
      for (auto [k, g] : pairs) {
        DecodeConfig cfg = base();
        cfg.beam_k = k;
        cfg.dbs_groups = g;
        grid.push_back(cfg);
      }
      break;
    }
    case Strategy::cs: {
      for (double a : {0.2, 0.4, 0.6}) {
        DecodeConfig cfg = base();
        cfg.cs_alpha = a;
        grid.push_back(cfg);
      }
      break;
    }
    case Strategy::cd: {
      for (double b : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        DecodeConfig cfg = base();
        cfg.cd_beta = b;
        grid.push_back(cfg);
      }
      break;
    }
    case Strategy::fsd:
    case Strategy::fsd_vec: {
      for (int n : {3, 5})
        for (double a : {0.3, 0.5, 0.7}) {
          DecodeConfig cfg = base();
          cfg.fsd_n = n;
          cfg.fsd_alpha = a;
          grid.push_back(cfg);
        }
      break;
    }
    case Strategy::dola: {
      // Two half-range buckets; each is intersected with the premature range
      // [0, layer_count-1) at decode time, and buckets that end up empty are
      // dropped here.
      int premature = layer_count - 1;
      if (premature < 1) break;
      int mid = layer_count / 2;
      const std::pair<int, int> buckets[] = {{0, mid}, {mid, layer_count}};
      for (auto [lo, hi] : buckets) {
        if (std::min(hi, premature) <= lo) continue;
        DecodeConfig cfg = base();
        cfg.dola_layer_lo = lo;
        cfg.dola_layer_hi = hi;
        grid.push_back(cfg);
      }
      break;
    }
    case Strategy::sled: {
      for (int n : {5, 10})
        for (double a : {0.1, 1.0, 5.0}) {
          DecodeConfig cfg = base();
          cfg.sled_n = n;
          cfg.sled_alpha = a;
          grid.push_back(cfg);
        }
      break;
    }
    case Strategy::temperature: {
      for (double t : {0.8, 1.0, 1.2}) {
        DecodeConfig cfg = base();
        cfg.temperature = t;
        grid.push_back(cfg);
      }
      break;
    }
    case Strategy::top_p: {
      DecodeConfig cfg = base();
      cfg.top_p = 0.9;
      grid.push_back(cfg);
      break;
    }
  }
  return grid;
}

}  // namespace declab::decoding

namespace declab::decoding::detail {

core::GenerationRecord run_single_path(model::LogitProvider& provider,
                                       const core::TokenSeq& prompt,
                                       const DecodeConfig& cfg,
                                       model::StepNeed need, const StepFn& step_fn,
                                       const std::string& item_id) {
  cfg.validate();
  const core::Vocabulary vocab = provider.capabilities().vocab;

  core::GenerationRecord rec;
  rec.item_id = item_id;
  rec.strategy_id = cfg.id();
  rec.params = cfg.params();
  rec.scoring_policy = cfg.policy;
  rec.output = core::Hypothesis(prompt);
  rec.finish_reason = core::FinishReason::max_tokens;

  for (int t = 0; t < cfg.max_new_tokens; ++t) {
    core::StepOutput so;
    ChoiceInfo choice;
    try {
      so = model::step_checked(provider, rec.output.tokens, need);
      choice = step_fn(so, rec.output.tokens, t);
    } catch (const CapabilityError&) {
      throw;
    } catch (const std::exception& e) {
      throw DecodeError(t, e.what());
    }

    std::vector<double> base_lsm = model::log_softmax(so.final_logits);
    core::StepScores scores;
    scores.model_log_prob = base_lsm[choice.token];
    scores.strategy_score = choice.raw_score;
    if (cfg.policy == core::ScoringPolicy::base_distribution) {
      scores.policy_log_prob = base_lsm[choice.token];
      double h = 0.0;
      for (double lp : base_lsm) h -= std::exp(lp) * lp;
      scores.policy_entropy = h < 0.0 ? 0.0 : h;
    } else {
      scores.policy_log_prob = choice.strategy_log_prob;
      scores.policy_entropy = choice.strategy_entropy;
    }

    rec.output.append_step(choice.token, scores, std::move(choice.hidden));
    if (choice.fallback) rec.fallback_steps.push_back(t);
    if (choice.layer != kNoLayer) rec.layer_trace.push_back(choice.layer);
    if (choice.penalty) rec.penalty_trace.push_back(*choice.penalty);

    if (choice.token == vocab.eos_id) {
      rec.finish_reason = core::FinishReason::eos;
      break;
    }
  }

  rec.output.finished = true;
  return rec;
}

double ngram_overlap(const std::vector<int>& a, const std::vector<int>& b, int n) {
  if (static_cast<int>(a.size()) < n || static_cast<int>(b.size()) < n) return 0.0;
  std::map<std::vector<int>, int> counts;
  for (size_t i = 0; i + n <= a.size(); ++i)
    counts[std::vector<int>(a.begin() + i, a.begin() + i + n)] += 1;
  double overlap = 0.0;
  std::map<std::vector<int>, int> used;
  for (size_t i = 0; i + n <= b.size(); ++i) {
    std::vector<int> gram(b.begin() + i, b.begin() + i + n);
    auto it = counts.find(gram);
    if (it != counts.end() && used[gram] < it->second) {
      used[gram] += 1;
      overlap += 1.0;
    }
  }
  return overlap;
}

}  // namespace declab::decoding::detail
