#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace declab {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A layer-logit or hidden-state request hit a provider that cannot serve it.
class CapabilityError : public Error {
public:
  using Error::Error;
};

/// Remote transport failure: unreachable server, timeout, or malformed payload.
class ProtocolError : public Error {
public:
  using Error::Error;
};

/// Vocabulary size disagreement between two models or between client and server.
class VocabMismatchError : public Error {
public:
  using Error::Error;
};

/// Min-max normalization (and thus PRR) is undefined for constant quality.
class DegenerateQualityError : public Error {
public:
  using Error::Error;
};

/// Uncertainty scores require at least one generated token.
class EmptyGenerationError : public Error {
public:
  using Error::Error;
};

/// A score fell outside the range the scorer declared at handshake.
class RangeViolationError : public Error {
public:
  using Error::Error;
};

/// A scorer response omitted one or more requested item ids.
class MissingItemsError : public Error {
public:
  MissingItemsError(const std::string& what, std::vector<std::string> ids)
      : Error(what), missing(std::move(ids)) {}
  std::vector<std::string> missing;
};

/// Configuration or input validation failure (exit code 1 territory).
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Provider failure during decoding, annotated with the step index.
class DecodeError : public Error {
public:
  DecodeError(int step, const std::string& what)
      : Error("decode step " + std::to_string(step) + ": " + what), step(step) {}
  int step;
};

}  // namespace declab
