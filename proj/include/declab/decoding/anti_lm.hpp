#pragma once

/**
 * On-the-fly anti-LMs estimated from the current prefix. Rebuilt per item;
 * after sync() they reflect exactly the tokens observed so far.
 */

#include "declab/core/types.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace declab::decoding {

/// Order-n n-gram counts over the prefix with additive smoothing 1.0.
///
/// P(y | tail) = (count(tail . y) + 1) / (count(tail) + |V|), where tail is
/// the last min(n-1, len) observed tokens. Early positions use the shorter
/// available context.
class AntiNgramLM {
public:
  AntiNgramLM(int order, int vocab_size) : order_(order), vocab_size_(vocab_size) {}

  void observe(int token) {
    seq_.push_back(token);
    size_t end = seq_.size();
    size_t ngram_len = std::min<size_t>(order_, end);
    std::vector<int> ngram(seq_.end() - ngram_len, seq_.end());
    ngram_counts_[ngram] += 1;
    std::vector<int> ctx(ngram.begin(), ngram.end() - 1);
    context_counts_[ctx] += 1;
  }

  /// Brings the model up to date with a full prefix (incremental: only new
  /// tokens are counted).
  void sync(const std::vector<int>& prefix) {
    for (size_t i = seq_.size(); i < prefix.size(); ++i) observe(prefix[i]);
  }

  double prob(int token) const {
    size_t tail_len = std::min<size_t>(order_ - 1, seq_.size());
    std::vector<int> tail(seq_.end() - tail_len, seq_.end());
    std::vector<int> ngram = tail;
    ngram.push_back(token);
    double num = 1.0, den = double(vocab_size_);
    if (auto it = ngram_counts_.find(ngram); it != ngram_counts_.end()) num += it->second;
    if (auto it = context_counts_.find(tail); it != context_counts_.end()) den += it->second;
    return num / den;
  }

  size_t observed() const { return seq_.size(); }

private:
  int order_;
  int vocab_size_;
  std::vector<int> seq_;
  std::map<std::vector<int>, int> ngram_counts_;
  std::map<std::vector<int>, int> context_counts_;
};

}  // namespace declab::decoding
