#pragma once

/**
 * Decoding strategies over an abstract logit provider.
 *
 * Every function is a pure map from (provider(s), prompt, config) to a
 * GenerationRecord. Determinism guarantees:
 *  - deterministic strategies return identical records across repeated runs;
 *  - sampled strategies are identical for identical (seed, item_id);
 *  - tie-breaking is lowest token id, then lexicographic sequence order.
 *
 * Generation stops when eos_id is emitted (the eos step is included in the
 * traces) or when max_new_tokens is reached, whichever comes first.
 */

#include "declab/core/types.hpp"
#include "declab/decoding/config.hpp"
#include "declab/model/provider.hpp"

#include <string>

namespace declab::decoding {

using core::GenerationRecord;
using core::TokenSeq;
using model::LogitProvider;

GenerationRecord decode_greedy(LogitProvider& provider, const TokenSeq& prompt,
                               const DecodeConfig& cfg, const std::string& item_id = "");

GenerationRecord decode_beam(LogitProvider& provider, const TokenSeq& prompt,
                             const DecodeConfig& cfg, const std::string& item_id = "");

GenerationRecord decode_dbs(LogitProvider& provider, const TokenSeq& prompt,
                            const DecodeConfig& cfg, const std::string& item_id = "");

GenerationRecord decode_cs(LogitProvider& provider, const TokenSeq& prompt,
                           const DecodeConfig& cfg, const std::string& item_id = "");

GenerationRecord decode_cd(LogitProvider& expert, LogitProvider& amateur,
                           const TokenSeq& prompt, const DecodeConfig& cfg,
                           const std::string& item_id = "");

GenerationRecord decode_fsd(LogitProvider& provider, const TokenSeq& prompt,
                            const DecodeConfig& cfg, const std::string& item_id = "");

GenerationRecord decode_dola(LogitProvider& provider, const TokenSeq& prompt,
                             const DecodeConfig& cfg, const std::string& item_id = "");

GenerationRecord decode_sled(LogitProvider& provider, const TokenSeq& prompt,
                             const DecodeConfig& cfg, const std::string& item_id = "");

/// Temperature and top-p sampling (strategy picks which via cfg.strategy).
GenerationRecord decode_sampled(LogitProvider& provider, const TokenSeq& prompt,
                                const DecodeConfig& cfg, const std::string& item_id = "");

/// Dispatch on cfg.strategy. `amateur` is required for Strategy::cd only.
GenerationRecord decode(LogitProvider& provider, const TokenSeq& prompt,
                        const DecodeConfig& cfg, const std::string& item_id = "",
                        LogitProvider* amateur = nullptr);

/// Root of the per-item random stream used by the sampling strategies.
/// Draws are one splitmix64 step each, mapped to [0,1) via (s >> 11) * 2^-53,
/// so a run is fully reproducible given (config seed, item_id).
uint64_t sampling_seed(uint64_t config_seed, const std::string& item_id);

}  // namespace declab::decoding
