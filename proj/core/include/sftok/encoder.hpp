#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string_view>

#include "sftok/feature_grid.hpp"
#include "sftok/sampler.hpp"

namespace sftok {

enum class EncoderKind { toy_patch_mean, file_backed };

std::string_view to_string(EncoderKind kind) noexcept;
EncoderKind parse_encoder_kind(std::string_view text);

/// Stand-in for the visual encoder plus projector. 24x24 matches a patch-14
/// encoder at 336x336 input.
struct EncoderSpec {
  EncoderKind kind = EncoderKind::toy_patch_mean;
  std::size_t grid_h = 24;
  std::size_t grid_w = 24;
  std::size_t channels = 3;
  std::optional<std::filesystem::path> source_path;

  /// Throws NonDivisiblePatch / InvalidConfig.
  void validate() const;
};

/// Toy encoder: token (r, c) channel k is the mean of pixel channel k % 3 over
/// the (336/grid_h) x (336/grid_w) patch, scaled to [0, 1]. File-backed specs
/// load source_path and check it holds frames.frames.size() frames.
FeatureGrid encode_frames(const VideoFrames& frames, const EncoderSpec& spec);

/// Reads a VFGF feature file and checks its frame count.
FeatureGrid load_features(const std::filesystem::path& path, std::size_t expected_n);

}  // namespace sftok
