#pragma once

#include <filesystem>

#include "hopkit/io/json_util.hpp"
#include "hopkit/reward/reward.hpp"
#include "hopkit/synth/skills.hpp"
#include "hopkit/training/training.hpp"

namespace hopkit::io {

// Overlays the keys present in `j` onto `cfg`; unknown keys and wrong types
// are ParseErrors naming the key. The result is validated.
void apply_config(const Json& j, SynthConfig& cfg);
void apply_config(const Json& j, RewardConfig& cfg);
void apply_config(const Json& j, CurriculumConfig& cfg);
void apply_config(const Json& j, DistillConfig& cfg);

Json to_json(const SynthConfig& cfg);
Json to_json(const RewardConfig& cfg);
Json to_json(const CurriculumConfig& cfg);
Json to_json(const DistillConfig& cfg);

Json load_json(const std::filesystem::path& path);

}  // namespace hopkit::io
