#pragma once

/**
 * Canonical JSON serialization for core types.
 *
 * Field names are lowercase snake case. Per-step probabilities appear as
 * `prob_trace` (exponentiated at this edge); the exact log-space internal
 * state is carried alongside as `log_prob_trace` so that parse -> dump round
 * trips are bit-exact. Parsers prefer `log_prob_trace` when present and fall
 * back to logs of `prob_trace` otherwise.
 *
 * nlohmann::json orders object keys alphabetically, so dump() output is
 * canonical and usable for golden tests.
 */

#include "declab/core/types.hpp"

#include <json.hpp>

namespace declab::core {

using json = nlohmann::json;

// --- Vocabulary -------------------------------------------------------------

inline void to_json(json& j, const Vocabulary& v) {
  j = json{{"size", v.size}, {"eos_id", v.eos_id}};
}

inline void from_json(const json& j, Vocabulary& v) {
  j.at("size").get_to(v.size);
  j.at("eos_id").get_to(v.eos_id);
}

// --- TokenSeq ---------------------------------------------------------------

inline void to_json(json& j, const TokenSeq& t) {
  j = json{{"ids", t.ids}, {"prompt_len", t.prompt_len}};
}

inline void from_json(const json& j, TokenSeq& t) {
  j.at("ids").get_to(t.ids);
  j.at("prompt_len").get_to(t.prompt_len);
}

// --- StepOutput -------------------------------------------------------------

inline void to_json(json& j, const StepOutput& s) {
  j = json{{"final_logits", s.final_logits}, {"layer_count", s.layer_count}};
  if (s.layer_logits) j["layer_logits"] = *s.layer_logits;
  if (s.hidden_state) j["hidden_state"] = *s.hidden_state;
}

inline void from_json(const json& j, StepOutput& s) {
  j.at("final_logits").get_to(s.final_logits);
  j.at("layer_count").get_to(s.layer_count);
  s.layer_logits.reset();
  s.hidden_state.reset();
  if (j.contains("layer_logits"))
    s.layer_logits = j.at("layer_logits").get<std::vector<std::vector<double>>>();
  if (j.contains("hidden_state"))
    s.hidden_state = j.at("hidden_state").get<std::vector<double>>();
}

// --- Hypothesis -------------------------------------------------------------

inline void to_json(json& j, const Hypothesis& h) {
  j = json{{"tokens", h.tokens},
           {"cum_strategy_score", h.cum_strategy_score},
           {"cum_log_prob", h.cum_log_prob},
           {"prob_trace", h.prob_trace()},
           {"log_prob_trace", h.log_prob_trace},
           {"entropy_trace", h.entropy_trace},
           {"strategy_score_trace", h.strategy_score_trace},
           {"finished", h.finished}};
  if (h.hidden_trace) j["hidden_trace"] = *h.hidden_trace;
}

inline void from_json(const json& j, Hypothesis& h) {
  j.at("tokens").get_to(h.tokens);
  j.at("cum_strategy_score").get_to(h.cum_strategy_score);
  j.at("cum_log_prob").get_to(h.cum_log_prob);
  if (j.contains("log_prob_trace")) {
    j.at("log_prob_trace").get_to(h.log_prob_trace);
  } else {
    auto probs = j.at("prob_trace").get<std::vector<double>>();
    h.log_prob_trace.clear();
    for (double p : probs) h.log_prob_trace.push_back(std::log(p));
  }
  j.at("entropy_trace").get_to(h.entropy_trace);
  j.at("strategy_score_trace").get_to(h.strategy_score_trace);
  j.at("finished").get_to(h.finished);
  h.hidden_trace.reset();
  if (j.contains("hidden_trace"))
    h.hidden_trace = j.at("hidden_trace").get<std::vector<std::vector<double>>>();
}

// --- GenerationRecord -------------------------------------------------------

inline void to_json(json& j, const GenerationRecord& r) {
  j = json{{"item_id", r.item_id},
           {"strategy_id", r.strategy_id},
           {"params", r.params},
           {"output", r.output},
           {"scoring_policy", to_string(r.scoring_policy)},
           {"finish_reason", to_string(r.finish_reason)},
           {"text", r.text},
           {"fallback_steps", r.fallback_steps},
           {"layer_trace", r.layer_trace},
           {"penalty_trace", r.penalty_trace}};
}

inline void from_json(const json& j, GenerationRecord& r) {
  j.at("item_id").get_to(r.item_id);
  j.at("strategy_id").get_to(r.strategy_id);
  j.at("params").get_to(r.params);
  j.at("output").get_to(r.output);
  r.scoring_policy = scoring_policy_from_string(j.at("scoring_policy").get<std::string>());
  r.finish_reason = finish_reason_from_string(j.at("finish_reason").get<std::string>());
  j.at("text").get_to(r.text);
  j.at("fallback_steps").get_to(r.fallback_steps);
  j.at("layer_trace").get_to(r.layer_trace);
  j.at("penalty_trace").get_to(r.penalty_trace);
}

// --- EvalRecord -------------------------------------------------------------

inline void to_json(json& j, const EvalRecord& r) {
  j = json{{"item_id", r.item_id},
           {"uncertainty", r.uncertainty},
           {"quality_raw", r.quality_raw},
           {"quality_norm", r.quality_norm}};
}

inline void from_json(const json& j, EvalRecord& r) {
  j.at("item_id").get_to(r.item_id);
  j.at("uncertainty").get_to(r.uncertainty);
  j.at("quality_raw").get_to(r.quality_raw);
  j.at("quality_norm").get_to(r.quality_norm);
}

// --- PRRResult --------------------------------------------------------------

inline void to_json(json& j, const PRRResult& p) {
  j = json{{"prr", p.prr},
           {"area_uns", p.area_uns},
           {"area_orc", p.area_orc},
           {"area_rand", p.area_rand},
           {"n_items", p.n_items},
           {"boot_mean", p.boot_mean},
           {"boot_sd", p.boot_sd},
           {"n_boot", p.n_boot}};
}

inline void from_json(const json& j, PRRResult& p) {
  j.at("prr").get_to(p.prr);
  j.at("area_uns").get_to(p.area_uns);
  j.at("area_orc").get_to(p.area_orc);
  j.at("area_rand").get_to(p.area_rand);
  j.at("n_items").get_to(p.n_items);
  j.at("boot_mean").get_to(p.boot_mean);
  j.at("boot_sd").get_to(p.boot_sd);
  j.at("n_boot").get_to(p.n_boot);
}

}  // namespace declab::core
