#pragma once

/**
 * Optional text <-> token adapters. Token ids are the unit of exchange
 * everywhere else; only adapters know about text.
 */

#include "declab/core/types.hpp"

#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace declab::model {

class TokenTextCodec {
public:
  virtual ~TokenTextCodec() = default;
  virtual std::vector<int> encode(const std::string& text) const = 0;
  virtual std::string decode(std::span<const int> ids) const = 0;
};

/// Token id i <-> the i-th word of a fixed word list. Encoding splits on
/// whitespace and drops out-of-vocabulary words; decoding joins with single
/// spaces. Both directions are deterministic.
class WordListCodec : public TokenTextCodec {
public:
  explicit WordListCodec(std::vector<std::string> words) : words_(std::move(words)) {
    for (size_t i = 0; i < words_.size(); ++i) ids_[words_[i]] = static_cast<int>(i);
  }

  std::vector<int> encode(const std::string& text) const override {
    std::vector<int> out;
    std::istringstream in(text);
    std::string word;
    while (in >> word) {
      auto it = ids_.find(word);
      if (it != ids_.end()) out.push_back(it->second);
    }
    return out;
  }

  std::string decode(std::span<const int> ids) const override {
    std::string out;
    for (int id : ids) {
      if (id < 0 || id >= static_cast<int>(words_.size())) continue;
      if (!out.empty()) out += ' ';
      out += words_[static_cast<size_t>(id)];
    }
    return out;
  }

  size_t size() const { return words_.size(); }

private:
  std::vector<std::string> words_;
  std::map<std::string, int> ids_;
};

}  // namespace declab::model
