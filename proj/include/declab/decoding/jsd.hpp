#pragma once

#include "declab/core/errors.hpp"

#include <cmath>
#include <span>

namespace declab::decoding {

/// Jensen-Shannon divergence between two probability vectors, natural log.
/// Symmetric; ranges over [0, ln 2]. Zero entries contribute nothing.
inline double jsd(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw Error("jsd: length mismatch");
  double div = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    double m = 0.5 * (p[i] + q[i]);
    if (p[i] > 0.0) div += 0.5 * p[i] * std::log(p[i] / m);
    if (q[i] > 0.0) div += 0.5 * q[i] * std::log(q[i] / m);
  }
  return div;
}

}  // namespace declab::decoding
