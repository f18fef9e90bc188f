#pragma once

#include "declab/core/errors.hpp"

#include <algorithm>
#include <vector>

namespace declab::quality {

/// Min-max normalization to [0,1]. Order-preserving; throws
/// DegenerateQualityError when all scores are equal (PRR is undefined
/// downstream in that case).
inline std::vector<double> minmax_normalize(const std::vector<double>& scores) {
  if (scores.empty()) throw DegenerateQualityError("minmax_normalize: empty input");
  auto [lo_it, hi_it] = std::minmax_element(scores.begin(), scores.end());
  double lo = *lo_it, hi = *hi_it;
  if (lo == hi)
    throw DegenerateQualityError("minmax_normalize: constant quality scores");
  std::vector<double> out;
  out.reserve(scores.size());
  for (double s : scores) out.push_back((s - lo) / (hi - lo));
  return out;
}

}  // namespace declab::quality
