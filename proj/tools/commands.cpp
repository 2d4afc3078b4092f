#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "sftok/aggregator.hpp"
#include "sftok/budget.hpp"
#include "sftok/config.hpp"
#include "sftok/encoder.hpp"
#include "sftok/error.hpp"
#include "sftok/feature_grid.hpp"
#include "sftok/prompting.hpp"
#include "sftok/sampler.hpp"

namespace sftok::cli {
namespace {

struct Dims {
  std::size_t h = 0;
  std::size_t w = 0;
};

Dims parse_dims(const std::string& text, const char* flag) {
  const auto x = text.find_first_of("xX");
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    std::size_t used_h = 0, used_w = 0;
    const std::string hs = text.substr(0, x), ws = text.substr(x + 1);
    const auto h = std::stoull(hs, &used_h), w = std::stoull(ws, &used_w);
    if (used_h != hs.size() || used_w != ws.size() || hs.empty() || ws.empty() || hs[0] == '-' || ws[0] == '-')
      throw std::invalid_argument(text);
    return {static_cast<std::size_t>(h), static_cast<std::size_t>(w)};
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidArgument, std::string(flag) + " expects HxW, got '" + text + "'");
  }
}

// Flags shared by the commands that take a pathway configuration.
struct PathwayFlags {
  std::optional<std::string> config;
  std::optional<std::size_t> n_frames;
  std::optional<std::size_t> n_slow;
  std::optional<std::string> slow_stride;
  std::optional<std::string> fast_out;

  void add_to(CLI::App& app) {
    app.add_option("--config", config, "JSON config file");
    app.add_option("--n-frames", n_frames, "Key frames N (default 50)");
    app.add_option("--n-slow", n_slow, "Slow pathway frames (default 10)");
    app.add_option("--slow-stride", slow_stride, "Slow pooling stride HxW (default 2x1)");
    app.add_option("--fast-out", fast_out, "Fast pathway target grid HxW (default 4x4)");
  }

  nlohmann::json config_json() const {
    return config ? read_json_file(*config) : nlohmann::json::object();
  }

  PathwayConfig resolve() const {
    PathwayConfig cfg = config ? pathway_from_json(config_json()) : PathwayConfig{};
    if (n_frames) cfg.n_frames = *n_frames;
    if (n_slow) cfg.n_slow = *n_slow;
    if (slow_stride) {
      const Dims d = parse_dims(*slow_stride, "--slow-stride");
      cfg.slow_stride_h = d.h;
      cfg.slow_stride_w = d.w;
    }
    if (fast_out) {
      const Dims d = parse_dims(*fast_out, "--fast-out");
      cfg.fast_out_h = d.h;
      cfg.fast_out_w = d.w;
    }
    cfg.validate();
    return cfg;
  }
};

struct EncoderFlags {
  std::optional<std::string> grid;
  std::optional<std::size_t> channels;

  void add_to(CLI::App& app) {
    app.add_option("--grid", grid, "Toy encoder token grid HxW (default 24x24)");
    app.add_option("--channels", channels, "Toy encoder channels (default 3)");
  }

  EncoderSpec resolve(const nlohmann::json& config) const {
    EncoderSpec spec = config.is_object() && config.contains("encoder") ? encoder_from_json(config) : EncoderSpec{};
    if (grid) {
      const Dims d = parse_dims(*grid, "--grid");
      spec.grid_h = d.h;
      spec.grid_w = d.w;
    }
    if (channels) spec.channels = *channels;
    spec.validate();
    return spec;
  }
};

struct BudgetFlags {
  std::size_t context_limit = kDefaultContextLimit;
  std::size_t reserved_text = kDefaultReservedTextTokens;

  void add_to(CLI::App& app) {
    app.add_option("--context-limit", context_limit, "LLM context window in tokens")->capture_default_str();
    app.add_option("--reserved-text", reserved_text, "Tokens reserved for text")->capture_default_str();
  }
};

// Writes to --out when given, else to the command's stdout.
template <typename Fn>
void with_output(const std::optional<std::string>& path, std::ostream& fallback, Fn&& fn) {
  if (!path) {
    fn(fallback);
    return;
  }
  std::ofstream file(*path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::IoFailure, "cannot open " + *path + " for writing");
  fn(file);
  file.close();
  if (!file) throw Error(ErrorCode::IoFailure, "cannot finish writing " + *path);
}

FeatureGrid encode_video(const std::string& video, std::size_t n, const EncoderSpec& spec) {
  return encode_frames(sample_frames(std::filesystem::path(video), n), spec);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"SlowFast video token aggregation"};
  app.require_subcommand(1);
  app.footer("Environment: SFTOK_SEED is reserved and has no effect; the pipeline is deterministic.");

  // encode
  auto* encode = app.add_subcommand("encode", "Sample key frames from a video and encode them to a VFGF file");
  std::string encode_video_path;
  std::optional<std::string> encode_out;
  std::optional<std::size_t> encode_n;
  std::optional<std::string> encode_config;
  EncoderFlags encode_enc;
  encode->add_option("video", encode_video_path, "Directory of numbered PNG/JPEG frames, or one image")->required();
  encode->add_option("--n-frames", encode_n, "Key frames to sample (default 50)");
  encode->add_option("--config", encode_config, "JSON config file");
  encode->add_option("--out", encode_out, "Output VFGF path")->required();
  encode_enc.add_to(*encode);

  // aggregate
  auto* agg = app.add_subcommand("aggregate", "Run the Slow and Fast pathways and write the token sequence");
  std::string agg_input;
  std::optional<std::string> agg_out;
  PathwayFlags agg_flags;
  EncoderFlags agg_enc;
  agg->add_option("input", agg_input, "VFGF feature file or video")->required();
  agg->add_option("--out", agg_out, "Output VFGF path; span metadata goes to <out>.json")->required();
  agg_flags.add_to(*agg);
  agg_enc.add_to(*agg);

  // plan
  auto* plan_cmd = app.add_subcommand("plan", "Check a pathway configuration against a context window");
  PathwayFlags plan_flags;
  BudgetFlags plan_budget;
  std::string plan_mode = "slowfast";
  std::string plan_grid = "24x24";
  plan_flags.add_to(*plan_cmd);
  plan_budget.add_to(*plan_cmd);
  plan_cmd->add_option("--mode", plan_mode, "slowfast | slow_only | fast_only")->capture_default_str();
  plan_cmd->add_option("--grid", plan_grid, "Feature grid HxW")->capture_default_str();

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Token counts over a grid of pathway settings, as CSV");
  std::string sweep_spec_path;
  std::optional<std::string> sweep_out;
  BudgetFlags sweep_budget;
  std::string sweep_grid = "24x24";
  sweep_cmd->add_option("spec", sweep_spec_path, "Sweep spec JSON")->required();
  sweep_cmd->add_option("--out", sweep_out, "CSV output path (default stdout)");
  sweep_cmd->add_option("--grid", sweep_grid, "Feature grid HxW")->capture_default_str();
  sweep_budget.add_to(*sweep_cmd);

  // prompt
  auto* prompt_cmd = app.add_subcommand("prompt", "Assemble the prompt text around the visual token span");
  PathwayFlags prompt_flags;
  std::optional<std::string> prompt_out;
  std::string prompt_grid = "24x24";
  prompt_flags.add_to(*prompt_cmd);
  prompt_cmd->add_option("--out", prompt_out, "Output text path (default stdout)");
  prompt_cmd->add_option("--grid", prompt_grid, "Feature grid HxW")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (encode->parsed()) {
      const nlohmann::json config = encode_config ? read_json_file(*encode_config) : nlohmann::json::object();
      std::size_t n = PathwayConfig{}.n_frames;
      if (encode_config) n = pathway_from_json(config).n_frames;
      if (encode_n) n = *encode_n;
      const FeatureGrid grid = encode_video(encode_video_path, n, encode_enc.resolve(config));
      save_vfgf(grid, *encode_out);
      out << "shape " << grid.n_frames() << 'x' << grid.height() << 'x' << grid.width() << 'x'
          << grid.channels() << '\n';
      out << "sha256 " << checksum(grid) << '\n';
    } else if (agg->parsed()) {
      const PathwayConfig cfg = agg_flags.resolve();
      const FeatureGrid features =
          is_vfgf_file(agg_input) ? load_features(agg_input, cfg.n_frames)
                                  : encode_video(agg_input, cfg.n_frames, agg_enc.resolve(agg_flags.config_json()));
      const AggregatedTokens tokens = aggregate(features, cfg);
      const auto values = tokens.tokens.values();
      const FeatureGrid as_grid(GridShape{1, 1, tokens.total, tokens.tokens.channels()},
                                std::vector<float>(values.begin(), values.end()));
      save_vfgf(as_grid, *agg_out);
      const nlohmann::json sidecar = {{"total", tokens.total},
                                      {"slow_span", {tokens.slow_span.begin, tokens.slow_span.end}},
                                      {"fast_span", {tokens.fast_span.begin, tokens.fast_span.end}},
                                      {"pathway", to_json(cfg)}};
      with_output(*agg_out + ".json", out, [&](std::ostream& s) { s << sidecar.dump(2) << '\n'; });
      out << tokens.total << '\n';
    } else if (plan_cmd->parsed()) {
      const Dims g = parse_dims(plan_grid, "--grid");
      const BudgetReport report = plan(plan_flags.resolve(), g.h, g.w, plan_budget.context_limit,
                                       plan_budget.reserved_text, parse_pathway_mode(plan_mode));
      out << to_json(report).dump() << '\n';
    } else if (sweep_cmd->parsed()) {
      const Dims g = parse_dims(sweep_grid, "--grid");
      const auto rows = sweep(sweep_from_json(read_json_file(sweep_spec_path)), g.h, g.w,
                              sweep_budget.context_limit, sweep_budget.reserved_text);
      with_output(sweep_out, out, [&](std::ostream& s) { write_sweep_csv(rows, s); });
    } else if (prompt_cmd->parsed()) {
      const Dims g = parse_dims(prompt_grid, "--grid");
      const PathwayConfig cfg = prompt_flags.resolve();
      const PromptBundle bundle = prompt_from_json(prompt_flags.config_json());
      const std::string text = render_prompt(build_prompt(bundle), token_count(cfg, g.h, g.w));
      with_output(prompt_out, out, [&](std::ostream& s) { s << text; });
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitModuleError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitModuleError;
  }
  return kExitOk;
}

}  // namespace sftok::cli
