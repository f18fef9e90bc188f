#include "declab/decoding/decode.hpp"

#include "declab/core/errors.hpp"

namespace declab::decoding {

GenerationRecord decode(LogitProvider& provider, const TokenSeq& prompt,
                        const DecodeConfig& cfg, const std::string& item_id,
                        LogitProvider* amateur) {
  switch (cfg.strategy) {
    case Strategy::greedy: return decode_greedy(provider, prompt, cfg, item_id);
    case Strategy::beam: return decode_beam(provider, prompt, cfg, item_id);
    case Strategy::dbs: return decode_dbs(provider, prompt, cfg, item_id);
    case Strategy::cs: return decode_cs(provider, prompt, cfg, item_id);
    case Strategy::cd:
      if (!amateur) throw ConfigError("cd requires an amateur provider");
      return decode_cd(provider, *amateur, prompt, cfg, item_id);
    case Strategy::fsd:
    case Strategy::fsd_vec: return decode_fsd(provider, prompt, cfg, item_id);
    case Strategy::dola: return decode_dola(provider, prompt, cfg, item_id);
    case Strategy::sled: return decode_sled(provider, prompt, cfg, item_id);
    case Strategy::temperature:
    case Strategy::top_p: return decode_sampled(provider, prompt, cfg, item_id);
  }
  throw ConfigError("unhandled strategy");
}

}  // namespace declab::decoding
