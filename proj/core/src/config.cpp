#include "sftok/config.hpp"

#include <cstdint>
#include <fstream>
#include <string>

#include "sftok/error.hpp"

namespace sftok {
namespace {

using nlohmann::json;

bool is_count(const json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

const json& section(const json& j, const char* key) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, "config must be a JSON object");
  const auto it = j.find(key);
  if (it != j.end() && it->is_object()) return *it;
  return j;
}

std::size_t get_count(const json& j, const char* key, std::size_t fallback) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!is_count(*it))
    throw Error(ErrorCode::InvalidConfig, std::string("'") + key + "' must be a non-negative integer");
  return it->get<std::size_t>();
}

bool get_flag(const json& j, const char* key, bool fallback) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_boolean()) throw Error(ErrorCode::InvalidConfig, std::string("'") + key + "' must be a boolean");
  return it->get<bool>();
}

std::vector<std::size_t> get_counts(const json& j, const char* key, std::size_t fallback) {
  const auto it = j.find(key);
  if (it == j.end()) return {fallback};
  if (!it->is_array()) throw Error(ErrorCode::InvalidSpec, std::string("'") + key + "' must be an array");
  std::vector<std::size_t> out;
  for (const auto& v : *it) {
    if (!is_count(v))
      throw Error(ErrorCode::InvalidSpec, std::string("'") + key + "' entries must be non-negative integers");
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

// Pairs are written as [h, w].
std::vector<Stride2D> get_pairs(const json& j, const char* key, Stride2D fallback) {
  const auto it = j.find(key);
  if (it == j.end()) return {fallback};
  if (!it->is_array()) throw Error(ErrorCode::InvalidSpec, std::string("'") + key + "' must be an array");
  std::vector<Stride2D> out;
  for (const auto& v : *it) {
    if (!v.is_array() || v.size() != 2 || !is_count(v[0]) || !is_count(v[1]))
      throw Error(ErrorCode::InvalidSpec, std::string("'") + key + "' entries must be [h, w] pairs");
    out.push_back(Stride2D{v[0].get<std::size_t>(), v[1].get<std::size_t>()});
  }
  return out;
}

json pairs_to_json(const std::vector<Stride2D>& pairs) {
  json arr = json::array();
  for (const auto& p : pairs) arr.push_back({p.h, p.w});
  return arr;
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidConfig, path.string() + ": " + e.what());
  }
}

json to_json(const PathwayConfig& cfg) {
  return {{"n_frames", cfg.n_frames},           {"n_slow", cfg.n_slow},
          {"slow_stride_h", cfg.slow_stride_h}, {"slow_stride_w", cfg.slow_stride_w},
          {"fast_out_h", cfg.fast_out_h},       {"fast_out_w", cfg.fast_out_w}};
}

PathwayConfig pathway_from_json(const json& root) {
  const json& j = section(root, "pathway");
  PathwayConfig cfg;
  cfg.n_frames = get_count(j, "n_frames", cfg.n_frames);
  cfg.n_slow = get_count(j, "n_slow", cfg.n_slow);
  cfg.slow_stride_h = get_count(j, "slow_stride_h", cfg.slow_stride_h);
  cfg.slow_stride_w = get_count(j, "slow_stride_w", cfg.slow_stride_w);
  cfg.fast_out_h = get_count(j, "fast_out_h", cfg.fast_out_h);
  cfg.fast_out_w = get_count(j, "fast_out_w", cfg.fast_out_w);
  cfg.validate();
  return cfg;
}

json to_json(const SweepSpec& spec) {
  return {{"mode", std::string(to_string(spec.mode))},
          {"n_frames", spec.n_frames},
          {"n_slow", spec.n_slow},
          {"slow_stride", pairs_to_json(spec.slow_stride)},
          {"fast_out", pairs_to_json(spec.fast_out)}};
}

SweepSpec sweep_from_json(const json& root) {
  const json& j = section(root, "sweep");
  const PathwayConfig d;
  SweepSpec spec;
  if (const auto it = j.find("mode"); it != j.end()) {
    if (!it->is_string()) throw Error(ErrorCode::InvalidSpec, "'mode' must be a string");
    try {
      spec.mode = parse_pathway_mode(it->get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidSpec, e.what());
    }
  }
  spec.n_frames = get_counts(j, "n_frames", d.n_frames);
  spec.n_slow = get_counts(j, "n_slow", d.n_slow);
  spec.slow_stride = get_pairs(j, "slow_stride", Stride2D{d.slow_stride_h, d.slow_stride_w});
  spec.fast_out = get_pairs(j, "fast_out", Stride2D{d.fast_out_h, d.fast_out_w});
  return spec;
}

json to_json(const PromptBundle& b) {
  json j = {{"task_kind", std::string(to_string(b.task_kind))},
            {"include_task_instruction", b.include_task_instruction},
            {"include_input_data", b.include_input_data},
            {"include_structured_answer", b.include_structured_answer},
            {"question", b.question}};
  if (!b.options.empty()) j["options"] = b.options;
  return j;
}

PromptBundle prompt_from_json(const json& root) {
  const json& j = section(root, "prompt");
  TaskKind kind = TaskKind::open_ended;
  if (const auto it = j.find("task_kind"); it != j.end()) {
    if (!it->is_string()) throw Error(ErrorCode::InvalidConfig, "'task_kind' must be a string");
    kind = parse_task_kind(it->get<std::string>());
  }
  std::string question;
  if (const auto it = j.find("question"); it != j.end()) {
    if (!it->is_string()) throw Error(ErrorCode::InvalidConfig, "'question' must be a string");
    question = it->get<std::string>();
  }
  std::vector<std::string> options;
  if (const auto it = j.find("options"); it != j.end()) {
    if (!it->is_array()) throw Error(ErrorCode::InvalidConfig, "'options' must be an array of strings");
    for (const auto& o : *it) {
      if (!o.is_string()) throw Error(ErrorCode::InvalidConfig, "'options' must be an array of strings");
      options.push_back(o.get<std::string>());
    }
  }
  PromptBundle b = PromptBundle::with_defaults(kind, std::move(question), std::move(options));
  b.include_task_instruction = get_flag(j, "include_task_instruction", b.include_task_instruction);
  b.include_input_data = get_flag(j, "include_input_data", b.include_input_data);
  b.include_structured_answer = get_flag(j, "include_structured_answer", b.include_structured_answer);
  return b;
}

json to_json(const EncoderSpec& spec) {
  json j = {{"kind", std::string(to_string(spec.kind))},
            {"grid_h", spec.grid_h},
            {"grid_w", spec.grid_w},
            {"channels", spec.channels}};
  if (spec.source_path) j["source_path"] = spec.source_path->string();
  return j;
}

EncoderSpec encoder_from_json(const json& root) {
  const json& j = section(root, "encoder");
  EncoderSpec spec;
  if (const auto it = j.find("kind"); it != j.end()) {
    if (!it->is_string()) throw Error(ErrorCode::InvalidConfig, "'kind' must be a string");
    spec.kind = parse_encoder_kind(it->get<std::string>());
  }
  spec.grid_h = get_count(j, "grid_h", spec.grid_h);
  spec.grid_w = get_count(j, "grid_w", spec.grid_w);
  spec.channels = get_count(j, "channels", spec.channels);
  if (const auto it = j.find("source_path"); it != j.end()) {
    if (!it->is_string()) throw Error(ErrorCode::InvalidConfig, "'source_path' must be a string");
    spec.source_path = it->get<std::string>();
  }
  spec.validate();
  return spec;
}

json to_json(const BudgetReport& r) {
  return {{"visual_tokens", r.visual_tokens},
          {"reserved_text_tokens", r.reserved_text_tokens},
          {"context_limit", r.context_limit},
          {"margin", r.margin},
          {"fits", r.fits}};
}

}  // namespace sftok
