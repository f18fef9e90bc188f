#pragma once

/**
 * TableLM: a deterministic table-backed toy model.
 *
 * The next-token distribution is looked up from the last min(order, t) tokens
 * of the context; unseen keys fall back to the uniform distribution. Logits
 * are ln(p) with ln(0) mapped to -1e9, which keeps every entry finite while
 * preserving argmax order.
 */

#include "declab/model/provider.hpp"

#include <json.hpp>

#include <cmath>
#include <map>
#include <vector>

namespace declab::model {

class TableLM : public LogitProvider {
public:
  TableLM(core::Vocabulary vocab, int order) : vocab_(vocab), order_(order) {
    vocab_.validate();
    if (order_ < 1) throw ConfigError("TableLM order must be >= 1");
  }

  /// Registers the distribution for a context key. The vector must have one
  /// entry per token, entries >= 0, summing to 1 within 1e-12.
  void set_row(std::vector<int> key, std::vector<double> probs) {
    if (static_cast<int>(key.size()) > order_)
      throw ConfigError("TableLM row key longer than order");
    validate_probs(probs);
    table_[std::move(key)] = std::move(probs);
  }

  int order() const { return order_; }

  /// The distribution the next step would see for this context (table row or
  /// uniform fallback).
  std::vector<double> row_for(const core::TokenSeq& context) const {
    auto it = table_.find(key_for(context.ids));
    if (it != table_.end()) return it->second;
    return std::vector<double>(vocab_.size, 1.0 / vocab_.size);
  }

  ModelCapabilities capabilities() const override {
    ModelCapabilities caps;
    caps.layer_count = 1;
    caps.vocab = vocab_;
    caps.concurrent_safe = true;
    return caps;
  }

  core::StepOutput step(const core::TokenSeq& context, StepNeed) override {
    core::StepOutput out;
    out.layer_count = 1;
    std::vector<double> probs = row_for(context);
    out.final_logits.reserve(probs.size());
    for (double p : probs) out.final_logits.push_back(p > 0.0 ? std::log(p) : kZeroLogit);
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [key, probs] : table_)
      rows.push_back({{"context", key}, {"probs", probs}});
    return {{"vocab_size", vocab_.size},
            {"eos_id", vocab_.eos_id},
            {"order", order_},
            {"rows", rows}};
  }

  static TableLM from_json(const nlohmann::json& j) {
    core::Vocabulary vocab{j.at("vocab_size").get<int>(), j.at("eos_id").get<int>()};
    TableLM lm(vocab, j.at("order").get<int>());
    for (const auto& row : j.at("rows"))
      lm.set_row(row.at("context").get<std::vector<int>>(),
                 row.at("probs").get<std::vector<double>>());
    return lm;
  }

  static constexpr double kZeroLogit = -1e9;

private:
  std::vector<int> key_for(const std::vector<int>& ids) const {
    size_t take = std::min<size_t>(order_, ids.size());
    return std::vector<int>(ids.end() - take, ids.end());
  }

  void validate_probs(const std::vector<double>& probs) const {
    if (static_cast<int>(probs.size()) != vocab_.size)
      throw ConfigError("TableLM row length != vocabulary size");
    double sum = 0.0;
    for (double p : probs) {
      if (p < 0.0 || !std::isfinite(p)) throw ConfigError("TableLM row entry out of range");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw ConfigError("TableLM row does not sum to 1");
  }

  core::Vocabulary vocab_;
  int order_;
  std::map<std::vector<int>, std::vector<double>> table_;
};

}  // namespace declab::model
