#include "sftok/aggregator.hpp"

#include <future>
#include <string>
#include <vector>

#include "sftok/error.hpp"
#include "sftok/pooling.hpp"
#include "sftok/sampler.hpp"

namespace sftok {
namespace {

void check_divides(const char* axis, std::size_t extent, std::size_t stride) {
  if (extent % stride != 0)
    throw Error(ErrorCode::NonDivisibleStride, std::string(axis) + ": " + std::to_string(extent) + " % " +
                                                   std::to_string(stride) + " = " +
                                                   std::to_string(extent % stride));
}

void check_fits(const char* axis, std::size_t extent, std::size_t target) {
  if (target > extent)
    throw Error(ErrorCode::TargetExceedsInput,
                std::string(axis) + " target " + std::to_string(target) + " > " + std::to_string(extent));
}

std::size_t slow_tokens(const PathwayConfig& cfg, std::size_t grid_h, std::size_t grid_w) {
  check_divides("height", grid_h, cfg.slow_stride_h);
  check_divides("width", grid_w, cfg.slow_stride_w);
  return cfg.n_slow * (grid_h / cfg.slow_stride_h) * (grid_w / cfg.slow_stride_w);
}

std::size_t fast_tokens(const PathwayConfig& cfg, std::size_t grid_h, std::size_t grid_w) {
  check_fits("height", grid_h, cfg.fast_out_h);
  check_fits("width", grid_w, cfg.fast_out_w);
  return cfg.n_frames * cfg.fast_out_h * cfg.fast_out_w;
}

}  // namespace

void PathwayConfig::validate() const {
  if (n_frames == 0 || n_slow == 0 || slow_stride_h == 0 || slow_stride_w == 0 || fast_out_h == 0 ||
      fast_out_w == 0)
    throw Error(ErrorCode::InvalidConfig, "all pathway fields must be >= 1");
  if (n_slow > n_frames)
    throw Error(ErrorCode::InvalidConfig,
                "n_slow " + std::to_string(n_slow) + " > n_frames " + std::to_string(n_frames));
}

std::string_view to_string(PathwayMode mode) noexcept {
  switch (mode) {
    case PathwayMode::slowfast: return "slowfast";
    case PathwayMode::slow_only: return "slow_only";
    case PathwayMode::fast_only: return "fast_only";
  }
  return "slowfast";
}

PathwayMode parse_pathway_mode(std::string_view text) {
  if (text == "slowfast") return PathwayMode::slowfast;
  if (text == "slow_only") return PathwayMode::slow_only;
  if (text == "fast_only") return PathwayMode::fast_only;
  throw Error(ErrorCode::InvalidConfig, "unknown pathway mode '" + std::string(text) + "'");
}

FeatureGrid slow_pathway(const FeatureGrid& features, const PathwayConfig& cfg) {
  cfg.validate();
  return avg_pool_stride(temporal_subsample(features, cfg.n_slow), cfg.slow_stride_h, cfg.slow_stride_w);
}

FeatureGrid fast_pathway(const FeatureGrid& features, const PathwayConfig& cfg) {
  cfg.validate();
  return adaptive_avg_pool(features, cfg.fast_out_h, cfg.fast_out_w);
}

AggregatedTokens aggregate(const FeatureGrid& features, const PathwayConfig& cfg) {
  cfg.validate();
  if (features.n_frames() != cfg.n_frames)
    throw Error(ErrorCode::InvalidConfig, "features have " + std::to_string(features.n_frames()) +
                                              " frames, config expects " + std::to_string(cfg.n_frames));
  // Fail on bad strides/targets before spawning work.
  const std::size_t expected = token_count(cfg, features.height(), features.width());

  auto fast = std::async(std::launch::async, [&] { return fast_pathway(features, cfg); });
  const FeatureGrid slow = slow_pathway(features, cfg);
  const FeatureGrid fast_grid = fast.get();

  const auto s = slow.data();
  const auto f = fast_grid.data();
  std::vector<float> values;
  values.reserve(s.size() + f.size());
  values.insert(values.end(), s.begin(), s.end());
  values.insert(values.end(), f.begin(), f.end());

  const std::size_t n_slow_tokens = slow.shape().cells();
  const std::size_t n_fast_tokens = fast_grid.shape().cells();
  AggregatedTokens out{TokenSequence(features.channels(), std::move(values)),
                       IndexRange{0, n_slow_tokens},
                       IndexRange{n_slow_tokens, n_slow_tokens + n_fast_tokens},
                       n_slow_tokens + n_fast_tokens};
  if (out.total != expected)
    throw Error(ErrorCode::DimensionMismatch, "aggregated " + std::to_string(out.total) +
                                                  " tokens, expected " + std::to_string(expected));
  return out;
}

std::size_t token_count(const PathwayConfig& cfg, std::size_t grid_h, std::size_t grid_w) {
  return token_count(PathwayMode::slowfast, cfg, grid_h, grid_w);
}

std::size_t token_count(PathwayMode mode, const PathwayConfig& cfg, std::size_t grid_h, std::size_t grid_w) {
  cfg.validate();
  switch (mode) {
    case PathwayMode::slow_only: return slow_tokens(cfg, grid_h, grid_w);
    case PathwayMode::fast_only: return fast_tokens(cfg, grid_h, grid_w);
    case PathwayMode::slowfast: break;
  }
  return slow_tokens(cfg, grid_h, grid_w) + fast_tokens(cfg, grid_h, grid_w);
}

}  // namespace sftok
