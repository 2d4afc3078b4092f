#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "sftok/feature_grid.hpp"

namespace sftok {

inline constexpr std::size_t kFrameSize = 336;

/// 8-bit RGB image, row-major, interleaved channels.
struct Image {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<std::uint8_t> rgb;

  std::uint8_t at(std::size_t row, std::size_t col, std::size_t channel) const noexcept {
    return rgb[(row * width + col) * 3 + channel];
  }

  friend bool operator==(const Image&, const Image&) = default;
};

Image make_image(std::size_t height, std::size_t width, std::uint8_t r, std::uint8_t g, std::uint8_t b);

struct VideoFrames {
  std::vector<Image> frames;
  std::size_t source_frame_count = 0;
  std::vector<std::size_t> sampled_indices;
};

/// Index i is floor((2i+1)*total / (2k)): the midpoint of the i-th of k equal
/// segments. Repeats when k > total. Throws ZeroCount if either count is 0.
std::vector<std::size_t> uniform_indices(std::size_t total, std::size_t k);

/// Bilinear resize; returns the input unchanged if it already has the target size.
Image resize_bilinear(const Image& image, std::size_t height, std::size_t width);

/// Picks n frames at uniform_indices(frames.size(), n) and resizes them to 336x336.
VideoFrames sample_frames(std::span<const Image> frames, std::size_t n);

/// Video on disk: a directory of numbered PNG/JPEG files, or a single image file.
/// Only the selected frames are decoded.
VideoFrames sample_frames(const std::filesystem::path& video, std::size_t n);

/// Lists the frame files of a video directory in frame order.
std::vector<std::filesystem::path> list_frame_files(const std::filesystem::path& video);

Image load_image(const std::filesystem::path& path);
void save_image(const Image& image, const std::filesystem::path& path);

FeatureGrid temporal_subsample(const FeatureGrid& grid, std::size_t k);

}  // namespace sftok
