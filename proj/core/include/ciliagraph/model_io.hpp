#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ciliagraph/classify.hpp"

namespace ciliagraph {

// Little-endian binary model format:
//   magic "CILIAHD\0", u32 format version, u32 header length, JSON config
//   header, centers (64-bit floats), banks (packed L1 sign bits plus per-step
//   flip positions), prototypes (64-bit floats), u32 CRC32 of everything
//   before it.
// Loading rebuilds the level chains from L1 and the flip metadata and
// recomputes the prototype norms, so a round trip reproduces predictions
// exactly.
std::vector<std::uint8_t> serialize_model(const TrainedModel& model);
TrainedModel deserialize_model(const std::vector<std::uint8_t>& bytes);

void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);

}  // namespace ciliagraph
