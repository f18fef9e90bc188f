#pragma once

/**
 * Decoding strategy selection and hyperparameters.
 *
 * One flat config struct covers every strategy; validate() enforces the
 * per-strategy invariants and default_grid() produces the standard
 * hyperparameter sweeps.
 */

#include "declab/core/errors.hpp"
#include "declab/core/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace declab::decoding {

enum class Strategy {
  greedy,
  beam,
  dbs,
  cs,
  cd,
  fsd,
  fsd_vec,
  dola,
  sled,
  temperature,
  top_p,
};

inline std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::greedy: return "greedy";
    case Strategy::beam: return "beam";
    case Strategy::dbs: return "dbs";
    case Strategy::cs: return "cs";
    case Strategy::cd: return "cd";
    case Strategy::fsd: return "fsd";
    case Strategy::fsd_vec: return "fsd_vec";
    case Strategy::dola: return "dola";
    case Strategy::sled: return "sled";
    case Strategy::temperature: return "temperature";
    case Strategy::top_p: return "top_p";
  }
  return "unknown";
}

inline Strategy strategy_from_string(const std::string& s) {
  static const std::map<std::string, Strategy> names = {
      {"greedy", Strategy::greedy},   {"beam", Strategy::beam},
      {"dbs", Strategy::dbs},         {"cs", Strategy::cs},
      {"cd", Strategy::cd},           {"fsd", Strategy::fsd},
      {"fsd_vec", Strategy::fsd_vec}, {"dola", Strategy::dola},
      {"sled", Strategy::sled},       {"temperature", Strategy::temperature},
      {"top_p", Strategy::top_p}};
  auto it = names.find(s);
  if (it == names.end()) throw ConfigError("unknown strategy: " + s);
  return it->second;
}

struct DecodeConfig {
  Strategy strategy = Strategy::greedy;
  int max_new_tokens = 64;
  core::ScoringPolicy policy = core::ScoringPolicy::strategy_distribution;

  // beam / dbs
  int beam_k = 3;
  int dbs_groups = 1;
  double dbs_lambda = 1.0;
  int dbs_delta_ngram = 1;  // n-gram order of the overlap measure

  // cs
  int cs_k = 5;
  double cs_alpha = 0.6;

  // cd
  double cd_alpha_head = 0.1;
  double cd_beta = 0.5;

  // fsd / fsd_vec
  int fsd_n = 3;
  double fsd_alpha = 0.5;

  // dola; the bucket is intersected with the premature range [0, layer_count-1)
  int dola_layer_lo = 0;
  int dola_layer_hi = 16;
  double dola_head_threshold = 0.1;  // head = tokens with prob >= threshold * max prob

  // sled
  int sled_n = 5;
  double sled_alpha = 0.1;
  int sled_iterations = 1;

  // sampling
  double temperature = 1.0;
  double top_p = 0.9;
  uint64_t seed = 0;

  void validate() const {
    if (max_new_tokens < 1) throw ConfigError("max_new_tokens must be >= 1");
    switch (strategy) {
      case Strategy::greedy:
        break;
      case Strategy::beam:
        if (beam_k < 1) throw ConfigError("beam k must be >= 1");
        break;
      case Strategy::dbs:
        if (beam_k < 1) throw ConfigError("dbs k must be >= 1");
        if (dbs_groups < 1 || beam_k % dbs_groups != 0)
          throw ConfigError("dbs group count must divide k");
        if (dbs_lambda < 0.0) throw ConfigError("dbs lambda must be >= 0");
        if (dbs_delta_ngram < 1) throw ConfigError("dbs delta n-gram order must be >= 1");
        break;
      case Strategy::cs:
        if (cs_k < 1) throw ConfigError("cs k must be >= 1");
        if (cs_alpha < 0.0 || cs_alpha > 1.0) throw ConfigError("cs alpha must be in [0,1]");
        break;
      case Strategy::cd:
        if (cd_beta < 0.0 || cd_beta > 1.0) throw ConfigError("cd beta must be in [0,1]");
        if (cd_alpha_head <= 0.0 || cd_alpha_head >= 1.0)
          throw ConfigError("cd alpha_head must be in (0,1)");
        break;
      case Strategy::fsd:
      case Strategy::fsd_vec:
        if (fsd_n < 1) throw ConfigError("fsd n must be >= 1");
        if (fsd_alpha < 0.0 || fsd_alpha > 1.0) throw ConfigError("fsd alpha must be in [0,1]");
        break;
      case Strategy::dola:
        if (dola_layer_lo < 0 || dola_layer_hi <= dola_layer_lo)
          throw ConfigError("dola bucket must satisfy 0 <= lo < hi");
        if (dola_head_threshold <= 0.0 || dola_head_threshold > 1.0)
          throw ConfigError("dola head threshold must be in (0,1]");
        break;
      case Strategy::sled:
        if (sled_n < 1) throw ConfigError("sled n must be >= 1");
        if (sled_alpha < 0.0) throw ConfigError("sled alpha_evolve must be >= 0");
        if (sled_iterations < 1) throw ConfigError("sled iterations must be >= 1");
        break;
      case Strategy::temperature:
        if (temperature <= 0.0) throw ConfigError("temperature must be > 0");
        break;
      case Strategy::top_p:
        if (top_p <= 0.0 || top_p > 1.0) throw ConfigError("top_p must be in (0,1]");
        break;
    }
  }

  std::string id() const { return to_string(strategy); }

  /// The hyperparameter assignment recorded on every GenerationRecord.
  std::map<std::string, double> params() const {
    switch (strategy) {
      case Strategy::greedy: return {};
      case Strategy::beam: return {{"k", double(beam_k)}};
      case Strategy::dbs:
        return {{"k", double(beam_k)},
                {"g", double(dbs_groups)},
                {"lambda", dbs_lambda},
                {"delta_ngram", double(dbs_delta_ngram)}};
      case Strategy::cs: return {{"k", double(cs_k)}, {"alpha", cs_alpha}};
      case Strategy::cd: return {{"alpha_head", cd_alpha_head}, {"beta", cd_beta}};
      case Strategy::fsd:
      case Strategy::fsd_vec: return {{"n", double(fsd_n)}, {"alpha", fsd_alpha}};
      case Strategy::dola:
        return {{"layer_lo", double(dola_layer_lo)},
                {"layer_hi", double(dola_layer_hi)},
                {"head_threshold", dola_head_threshold}};
      case Strategy::sled:
        return {{"n", double(sled_n)},
                {"alpha_evolve", sled_alpha},
                {"iterations", double(sled_iterations)}};
      case Strategy::temperature: return {{"t", temperature}};
      case Strategy::top_p: return {{"p", top_p}};
    }
    return {};
  }

  /// Compact deterministic id like "k=6,g=3,lambda=1" (sorted keys).
  std::string param_id() const;
};

/// Standard sweep grids. Layer-bucket defaults depend on the provider's layer
/// count; for 32-layer providers they are [0,16) and [16,32), smaller models
/// get the premature range split in half.
std::vector<DecodeConfig> default_grid(Strategy s, int layer_count = 32);

/// Every strategy a provider with the given capabilities can run.
std::vector<Strategy> all_strategies();

}  // namespace declab::decoding
