#pragma once

#include <cstddef>
#include <string_view>

#include "sftok/feature_grid.hpp"

namespace sftok {

/// SlowFast hyperparameters. The Fast pathway always keeps all n_frames
/// frames; its spatial stride is implied by the target grid.
struct PathwayConfig {
  std::size_t n_frames = 50;
  std::size_t n_slow = 10;
  std::size_t slow_stride_h = 2;
  std::size_t slow_stride_w = 1;
  std::size_t fast_out_h = 4;
  std::size_t fast_out_w = 4;

  /// Throws InvalidConfig if a field is 0 or n_slow > n_frames.
  void validate() const;

  friend bool operator==(const PathwayConfig&, const PathwayConfig&) = default;
};

/// Single-pathway modes stand in for the "remove Slow" / "remove Fast" baselines.
enum class PathwayMode { slowfast, slow_only, fast_only };

std::string_view to_string(PathwayMode mode) noexcept;
PathwayMode parse_pathway_mode(std::string_view text);

struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// flatten(slow) followed directly by flatten(fast). No separator tokens.
struct AggregatedTokens {
  TokenSequence tokens;
  IndexRange slow_span;
  IndexRange fast_span;
  std::size_t total = 0;
};

/// Temporal subsample to n_slow frames, then stride pooling.
FeatureGrid slow_pathway(const FeatureGrid& features, const PathwayConfig& cfg);

/// Adaptive pooling of every frame to the fast target grid.
FeatureGrid fast_pathway(const FeatureGrid& features, const PathwayConfig& cfg);

/// Requires features.n_frames() == cfg.n_frames (InvalidConfig otherwise).
AggregatedTokens aggregate(const FeatureGrid& features, const PathwayConfig& cfg);

/// Closed-form slow + fast token count for a grid_h x grid_w feature grid.
std::size_t token_count(const PathwayConfig& cfg, std::size_t grid_h, std::size_t grid_w);

/// Token count of one pathway mode: slow_only counts n_slow*H/sh*W/sw,
/// fast_only counts n_frames*fast_out_h*fast_out_w.
std::size_t token_count(PathwayMode mode, const PathwayConfig& cfg, std::size_t grid_h, std::size_t grid_w);

}  // namespace sftok
