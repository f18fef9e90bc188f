#include "declab/quality/text_metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace declab::quality {

std::vector<std::string> normalize_text(const std::string& text) {
  std::string cleaned;
  cleaned.reserve(text.size());
  for (unsigned char c : text) {
    if (std::ispunct(c))
      cleaned += ' ';
    else
      cleaned += static_cast<char>(std::tolower(c));
  }
  std::vector<std::string> tokens;
  std::istringstream in(cleaned);
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

namespace {

size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      if (a[i - 1] == b[j - 1])
        cur[j] = prev[j - 1] + 1;
      else
        cur[j] = std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::map<std::vector<std::string>, int> ngram_counts(const std::vector<std::string>& toks,
                                                     int n) {
  std::map<std::vector<std::string>, int> counts;
  if (static_cast<int>(toks.size()) < n) return counts;
  for (size_t i = 0; i + n <= toks.size(); ++i)
    counts[std::vector<std::string>(toks.begin() + i, toks.begin() + i + n)] += 1;
  return counts;
}

}  // namespace

double rouge_l(const std::string& hyp, const std::string& ref) {
  std::vector<std::string> h = normalize_text(hyp);
  std::vector<std::string> r = normalize_text(ref);
  if (h.empty() || r.empty()) return 0.0;
  double lcs = static_cast<double>(lcs_length(h, r));
  if (lcs == 0.0) return 0.0;
  double precision = lcs / static_cast<double>(h.size());
  double recall = lcs / static_cast<double>(r.size());
  return 2.0 * precision * recall / (precision + recall);
}

double rouge_l_multi(const std::string& hyp, const std::vector<std::string>& refs) {
  double best = 0.0;
  for (const auto& ref : refs) best = std::max(best, rouge_l(hyp, ref));
  return best;
}

double bleu(const std::string& hyp, const std::string& ref) {
  std::vector<std::string> h = normalize_text(hyp);
  std::vector<std::string> r = normalize_text(ref);
  if (h.empty() || r.empty()) return 0.0;

  double log_precision_sum = 0.0;
  for (int n = 1; n <= 4; ++n) {
    auto hc = ngram_counts(h, n);
    auto rc = ngram_counts(r, n);
    double matched = 0.0, total = 0.0;
    for (const auto& [gram, count] : hc) {
      total += count;
      auto it = rc.find(gram);
      if (it != rc.end()) matched += std::min(count, it->second);
    }
    double p;
    if (n == 1) {
      if (total == 0.0 || matched == 0.0) return 0.0;
      p = matched / total;
    } else {
      p = (matched + 1.0) / (total + 1.0);
    }
    log_precision_sum += 0.25 * std::log(p);
  }

  double c = static_cast<double>(h.size());
  double rlen = static_cast<double>(r.size());
  double bp = c < rlen ? std::exp(1.0 - rlen / c) : 1.0;
  return bp * std::exp(log_precision_sum);
}

double bleu_multi(const std::string& hyp, const std::vector<std::string>& refs) {
  double best = 0.0;
  for (const auto& ref : refs) best = std::max(best, bleu(hyp, ref));
  return best;
}

namespace {

template <typename T>
double distinct_impl(const std::vector<T>& tokens, int n) {
  if (n < 1 || static_cast<int>(tokens.size()) < n) return 0.0;
  std::set<std::vector<T>> unique;
  size_t total = tokens.size() - n + 1;
  for (size_t i = 0; i + n <= tokens.size(); ++i)
    unique.insert(std::vector<T>(tokens.begin() + i, tokens.begin() + i + n));
  return static_cast<double>(unique.size()) / static_cast<double>(total);
}

}  // namespace

double distinct_n(const std::vector<int>& tokens, int n) { return distinct_impl(tokens, n); }

double distinct_n(const std::vector<std::string>& tokens, int n) {
  return distinct_impl(tokens, n);
}

}  // namespace declab::quality
