#pragma once

#include <string>

#include "pdn/config.hpp"
#include "pdn/model.hpp"
#include "pdn/vocab.hpp"

namespace pdn {

/// Binary checkpoint, little-endian:
///   magic "PDN1", u32 format version,
///   u32 length + UTF-8 config JSON,
///   u32 length + vocab blob (one token per line),
///   u32 tensor count, then per tensor:
///     u32 name length + name, u32 rank, u32 per dim, raw float32 values.
/// Parameters live on the float grid, so save followed by load reproduces
/// them bit-exactly. Writing goes through a temp file renamed on success, so
/// failures leave no partial checkpoint behind.
void save_checkpoint(const SentimentModel& model, const TrainConfig& config, const Vocab& vocab,
                     const std::string& path);

struct LoadedCheckpoint {
  SentimentModel model;
  TrainConfig config;
  Vocab vocab;
};

/// Fails with the byte offset on bad magic, unknown version, or truncation.
LoadedCheckpoint load_checkpoint(const std::string& path);

/// Config blob codec, exposed for checkpoint inspection.
std::string train_config_to_json(const TrainConfig& config);
TrainConfig train_config_from_json(const std::string& text);

}  // namespace pdn
