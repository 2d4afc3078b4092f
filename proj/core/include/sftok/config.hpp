#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "sftok/aggregator.hpp"
#include "sftok/budget.hpp"
#include "sftok/encoder.hpp"
#include "sftok/prompting.hpp"

namespace sftok {

// JSON config file. Each section may sit at the top level or under its own
// key ("pathway", "sweep", "prompt", "encoder"); missing keys keep defaults.
//
//   {"pathway": {"n_frames": 50, "n_slow": 10, "slow_stride_h": 2, "slow_stride_w": 1,
//                "fast_out_h": 4, "fast_out_w": 4},
//    "sweep":   {"mode": "fast_only", "n_frames": [50, 100], "fast_out": [[4, 4]]},
//    "prompt":  {"task_kind": "multiple_choice", "question": "...", "options": ["..."]},
//    "encoder": {"kind": "toy_patch_mean", "grid_h": 24, "grid_w": 24, "channels": 3}}

nlohmann::json read_json_file(const std::filesystem::path& path);

nlohmann::json to_json(const PathwayConfig& cfg);
PathwayConfig pathway_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SweepSpec& spec);
SweepSpec sweep_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PromptBundle& bundle);
PromptBundle prompt_from_json(const nlohmann::json& j);

nlohmann::json to_json(const EncoderSpec& spec);
EncoderSpec encoder_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BudgetReport& report);

}  // namespace sftok
