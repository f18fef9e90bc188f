#pragma once

/**
 * Native per-item quality metrics: LCS-F1 (rouge_l), smoothed sentence-level
 * BLEU-4 (bleu), and unique-n-gram rate (distinct_n).
 *
 * Text normalization is pinned for determinism: lowercase, punctuation
 * replaced by spaces, whitespace tokenization.
 */

#include <string>
#include <vector>

namespace declab::quality {

/// Lowercases, strips punctuation, splits on whitespace.
std::vector<std::string> normalize_text(const std::string& text);

/// LCS-based F1 between hypothesis and reference. 0 when either side
/// normalizes to nothing.
double rouge_l(const std::string& hyp, const std::string& ref);

/// Max over references (multi-reference variant; off by default in configs).
double rouge_l_multi(const std::string& hyp, const std::vector<std::string>& refs);

/// Sentence-level BLEU-4 with add-1 smoothing on the n>1 precisions and
/// brevity penalty exp(1 - r/c) when the hypothesis is shorter.
double bleu(const std::string& hyp, const std::string& ref);

double bleu_multi(const std::string& hyp, const std::vector<std::string>& refs);

/// |unique n-grams| / |n-grams|; 0 when fewer than n tokens.
double distinct_n(const std::vector<int>& tokens, int n);
double distinct_n(const std::vector<std::string>& tokens, int n);

}  // namespace declab::quality
