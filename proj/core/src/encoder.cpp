#include "sftok/encoder.hpp"

#include <string>
#include <vector>

#include "sftok/error.hpp"

namespace sftok {

std::string_view to_string(EncoderKind kind) noexcept {
  return kind == EncoderKind::file_backed ? "file_backed" : "toy_patch_mean";
}

EncoderKind parse_encoder_kind(std::string_view text) {
  if (text == "toy_patch_mean") return EncoderKind::toy_patch_mean;
  if (text == "file_backed") return EncoderKind::file_backed;
  throw Error(ErrorCode::InvalidConfig, "unknown encoder kind '" + std::string(text) + "'");
}

void EncoderSpec::validate() const {
  if (grid_h == 0 || grid_w == 0 || channels == 0)
    throw Error(ErrorCode::InvalidConfig, "encoder grid and channels must be >= 1");
  if (kind == EncoderKind::file_backed) {
    if (!source_path) throw Error(ErrorCode::InvalidConfig, "file_backed encoder needs source_path");
    return;
  }
  if (kFrameSize % grid_h != 0 || kFrameSize % grid_w != 0)
    throw Error(ErrorCode::NonDivisiblePatch, std::to_string(kFrameSize) + " is not divisible by grid " +
                                                  std::to_string(grid_h) + "x" + std::to_string(grid_w));
}

FeatureGrid encode_frames(const VideoFrames& frames, const EncoderSpec& spec) {
  spec.validate();
  if (frames.frames.empty()) throw Error(ErrorCode::EmptyVideo, "no frames to encode");
  if (spec.kind == EncoderKind::file_backed) return load_features(*spec.source_path, frames.frames.size());

  const std::size_t ph = kFrameSize / spec.grid_h, pw = kFrameSize / spec.grid_w;
  const std::size_t c = spec.channels;
  const double scale = 1.0 / (255.0 * static_cast<double>(ph * pw));
  std::vector<float> data(frames.frames.size() * spec.grid_h * spec.grid_w * c);

  float* dst = data.data();
  for (std::size_t f = 0; f < frames.frames.size(); ++f) {
    const Image& img = frames.frames[f];
    if (img.height != kFrameSize || img.width != kFrameSize || img.rgb.size() != kFrameSize * kFrameSize * 3)
      throw Error(ErrorCode::BadFrameSize, "frame " + std::to_string(f) + " is " + std::to_string(img.height) +
                                               "x" + std::to_string(img.width) + ", expected 336x336");
    for (std::size_t r = 0; r < spec.grid_h; ++r) {
      for (std::size_t q = 0; q < spec.grid_w; ++q) {
        std::uint64_t sums[3] = {0, 0, 0};
        for (std::size_t y = r * ph; y < (r + 1) * ph; ++y) {
          const std::uint8_t* px = img.rgb.data() + (y * kFrameSize + q * pw) * 3;
          for (std::size_t x = 0; x < pw; ++x, px += 3) {
            sums[0] += px[0];
            sums[1] += px[1];
            sums[2] += px[2];
          }
        }
        for (std::size_t k = 0; k < c; ++k) *dst++ = static_cast<float>(static_cast<double>(sums[k % 3]) * scale);
      }
    }
  }
  return FeatureGrid(GridShape{frames.frames.size(), spec.grid_h, spec.grid_w, c}, std::move(data));
}

FeatureGrid load_features(const std::filesystem::path& path, std::size_t expected_n) {
  FeatureGrid grid = load_vfgf(path.string());
  if (grid.n_frames() != expected_n)
    throw Error(ErrorCode::FrameCountMismatch, path.string() + " has " + std::to_string(grid.n_frames()) +
                                                   " frames, expected " + std::to_string(expected_n));
  return grid;
}

}  // namespace sftok
