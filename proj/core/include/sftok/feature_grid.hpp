#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sftok {

struct GridShape {
  std::size_t n_frames = 0;
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 0;

  std::size_t cells() const noexcept { return n_frames * height * width; }
  std::size_t elements() const noexcept { return cells() * channels; }

  friend bool operator==(const GridShape&, const GridShape&) = default;
};

/// Dense per-frame feature tensor, layout frame -> row -> column -> channel.
///
/// Immutable once built: every dimension is at least 1, the payload length
/// matches the shape and no value is NaN or infinite.
class FeatureGrid {
 public:
  /// Throws DimensionMismatch (zero dimension or wrong payload length) or
  /// NonFiniteValue (reporting the first offending index).
  FeatureGrid(GridShape shape, std::vector<float> data);

  const GridShape& shape() const noexcept { return shape_; }
  std::size_t n_frames() const noexcept { return shape_.n_frames; }
  std::size_t height() const noexcept { return shape_.height; }
  std::size_t width() const noexcept { return shape_.width; }
  std::size_t channels() const noexcept { return shape_.channels; }

  std::span<const float> data() const& noexcept { return data_; }
  std::span<const float> data() const&& = delete;

  std::size_t offset(std::size_t frame, std::size_t row, std::size_t col) const noexcept {
    return ((frame * shape_.height + row) * shape_.width + col) * shape_.channels;
  }

  /// Channel vector of one cell.
  std::span<const float> cell(std::size_t frame, std::size_t row, std::size_t col) const& noexcept {
    return std::span<const float>(data_).subspan(offset(frame, row, col), shape_.channels);
  }
  std::span<const float> cell(std::size_t, std::size_t, std::size_t) const&& = delete;

  float at(std::size_t frame, std::size_t row, std::size_t col, std::size_t channel) const noexcept {
    return data_[offset(frame, row, col) + channel];
  }

  friend bool operator==(const FeatureGrid& a, const FeatureGrid& b);

 private:
  GridShape shape_;
  std::vector<float> data_;
};

FeatureGrid new_grid(std::size_t n_frames, std::size_t height, std::size_t width,
                     std::size_t channels, std::vector<float> data);

/// Ordered channel vectors, stored contiguously.
class TokenSequence {
 public:
  TokenSequence(std::size_t channels, std::vector<float> values);

  std::size_t channels() const noexcept { return channels_; }
  std::size_t size() const noexcept { return values_.size() / channels_; }
  std::span<const float> token(std::size_t i) const& noexcept {
    return std::span<const float>(values_).subspan(i * channels_, channels_);
  }
  std::span<const float> token(std::size_t) const&& = delete;
  std::span<const float> values() const& noexcept { return values_; }
  std::span<const float> values() const&& = delete;

  friend bool operator==(const TokenSequence&, const TokenSequence&) = default;

 private:
  std::size_t channels_;
  std::vector<float> values_;
};

// VFGF: "VFGF0001" | u32 version | u32 n_frames | u32 height | u32 width |
// u32 channels | f32 payload. Little-endian, no padding, no trailer.
inline constexpr char kVfgfMagic[8] = {'V', 'F', 'G', 'F', '0', '0', '0', '1'};
inline constexpr std::uint32_t kVfgfVersion = 1;
inline constexpr std::size_t kVfgfHeaderSize = 8 + 4 + 16;

std::vector<std::byte> encode_vfgf(const FeatureGrid& grid);
FeatureGrid decode_vfgf(std::span<const std::byte> bytes);

/// Returns the number of bytes written. Throws IoFailure if the sink fails.
std::size_t write_vfgf(const FeatureGrid& grid, std::ostream& sink);
FeatureGrid read_vfgf(std::istream& source);

void save_vfgf(const FeatureGrid& grid, const std::string& path);
FeatureGrid load_vfgf(const std::string& path);

/// True if the file starts with the VFGF magic.
bool is_vfgf_file(const std::string& path);

/// SHA-256 of the canonical VFGF encoding, lowercase hex.
std::string checksum(const FeatureGrid& grid);

}  // namespace sftok
