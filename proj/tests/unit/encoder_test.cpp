#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "sftok/encoder.hpp"
#include "sftok/error.hpp"
#include "sftok/pooling.hpp"
#include "support/oracles.hpp"

namespace sftok {
namespace {
namespace fs = std::filesystem;

VideoFrames one_frame(Image img) {
  VideoFrames v;
  v.frames.push_back(std::move(img));
  v.source_frame_count = 1;
  v.sampled_indices = {0};
  return v;
}

Image random_image(std::mt19937& rng) {
  Image img{kFrameSize, kFrameSize, std::vector<std::uint8_t>(kFrameSize * kFrameSize * 3)};
  for (auto& p : img.rgb) p = static_cast<std::uint8_t>(rng());
  return img;
}

// Brute-force patch mean straight from the pixel definition.
double patch_mean(const Image& img, std::size_t r, std::size_t c, std::size_t ph, std::size_t pw, std::size_t ch) {
  double sum = 0;
  for (std::size_t y = r * ph; y < (r + 1) * ph; ++y)
    for (std::size_t x = c * pw; x < (c + 1) * pw; ++x) sum += img.at(y, x, ch);
  return sum / (ph * pw) / 255.0;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

TEST(ToyEncoder, BlackAndWhite) {
  const EncoderSpec spec;
  const auto black = encode_frames(one_frame(make_image(336, 336, 0, 0, 0)), spec);
  EXPECT_EQ(black.shape(), (GridShape{1, 24, 24, 3}));
  for (float v : black.data()) EXPECT_EQ(v, 0.0f);
  const auto white = encode_frames(one_frame(make_image(336, 336, 255, 255, 255)), spec);
  for (float v : white.data()) EXPECT_EQ(v, 1.0f);
}

TEST(ToyEncoder, LeftWhiteRightBlack) {
  Image img = make_image(336, 336, 0, 0, 0);
  for (std::size_t y = 0; y < 336; ++y)
    for (std::size_t x = 0; x < 168; ++x)
      for (std::size_t ch = 0; ch < 3; ++ch) img.rgb[(y * 336 + x) * 3 + ch] = 255;
  const auto g = encode_frames(one_frame(img), EncoderSpec{});
  for (std::size_t r = 0; r < 24; ++r)
    for (std::size_t c = 0; c < 24; ++c)
      for (std::size_t ch = 0; ch < 3; ++ch) {
        ASSERT_EQ(g.at(0, r, c, ch), c < 12 ? 1.0f : 0.0f);
        ASSERT_NEAR(g.at(0, r, c, ch), patch_mean(img, r, c, 14, 14, ch), 1e-7);
      }
}

TEST(ToyEncoder, MatchesPatchMeanOracle) {
  std::mt19937 rng(4);
  const Image img = random_image(rng);
  for (auto [gh, gw, channels] : {std::tuple{24, 24, 3}, std::tuple{12, 8, 5}, std::tuple{1, 336, 2}}) {
    EncoderSpec spec;
    spec.grid_h = gh;
    spec.grid_w = gw;
    spec.channels = channels;
    const auto g = encode_frames(one_frame(img), spec);
    for (std::size_t r = 0; r < spec.grid_h; ++r)
      for (std::size_t c = 0; c < spec.grid_w; ++c)
        for (std::size_t k = 0; k < spec.channels; ++k)
          ASSERT_NEAR(g.at(0, r, c, k), patch_mean(img, r, c, 336 / gh, 336 / gw, k % 3), 1e-6);
  }
}

TEST(ToyEncoder, ShiftByOnePatchShiftsOneCell) {
  std::mt19937 rng(6);
  const Image img = random_image(rng);
  Image shifted = make_image(336, 336, 0, 0, 0);
  for (std::size_t y = 0; y < 336; ++y)
    for (std::size_t x = 14; x < 336; ++x)
      for (std::size_t ch = 0; ch < 3; ++ch) shifted.rgb[(y * 336 + x) * 3 + ch] = img.at(y, x - 14, ch);
  const auto a = encode_frames(one_frame(img), EncoderSpec{});
  const auto b = encode_frames(one_frame(shifted), EncoderSpec{});
  for (std::size_t r = 0; r < 24; ++r)
    for (std::size_t c = 1; c < 24; ++c)
      for (std::size_t ch = 0; ch < 3; ++ch) ASSERT_EQ(b.at(0, r, c, ch), a.at(0, r, c - 1, ch));
}

TEST(ToyEncoder, PoolingComposesWithCoarserEncoding) {
  std::mt19937 rng(10);
  VideoFrames v;
  for (int i = 0; i < 3; ++i) v.frames.push_back(random_image(rng));
  EncoderSpec coarse;
  coarse.grid_h = coarse.grid_w = 4;
  const auto pooled = adaptive_avg_pool(encode_frames(v, EncoderSpec{}), 4, 4);
  const auto direct = encode_frames(v, coarse);
  ASSERT_EQ(pooled.shape(), direct.shape());
  for (std::size_t i = 0; i < direct.data().size(); ++i) ASSERT_NEAR(pooled.data()[i], direct.data()[i], 1e-6);
}

TEST(ToyEncoder, PureFunction) {
  std::mt19937 rng(15);
  const auto v = one_frame(random_image(rng));
  EXPECT_EQ(encode_frames(v, EncoderSpec{}), encode_frames(v, EncoderSpec{}));
}

TEST(ToyEncoder, Errors) {
  EXPECT_EQ(code_of([] { encode_frames(one_frame(make_image(224, 224, 0, 0, 0)), EncoderSpec{}); }),
            ErrorCode::BadFrameSize);
  EncoderSpec bad;
  bad.grid_h = 25;
  EXPECT_EQ(code_of([&] { encode_frames(one_frame(make_image(336, 336, 0, 0, 0)), bad); }),
            ErrorCode::NonDivisiblePatch);
  EXPECT_EQ(code_of([] { encode_frames(VideoFrames{}, EncoderSpec{}); }), ErrorCode::EmptyVideo);
}

class FeatureFile : public ::testing::Test {
 protected:
  void SetUp() override {
    path_ = fs::temp_directory_path() / ("sftok_features_" + std::to_string(std::random_device{}()) + ".vfgf");
  }
  void TearDown() override { fs::remove(path_); }
  fs::path path_;
};

TEST_F(FeatureFile, LoadsWideChannelGrid) {
  std::mt19937 rng(16);
  const auto g = testing::random_grid(rng, {50, 24, 24, 64});
  save_vfgf(g, path_.string());
  EXPECT_EQ(load_features(path_, 50), g);

  EncoderSpec spec;
  spec.kind = EncoderKind::file_backed;
  spec.source_path = path_;
  VideoFrames v;
  v.frames.resize(50);
  EXPECT_EQ(encode_frames(v, spec), g);
}

TEST_F(FeatureFile, FrameCountMismatch) {
  std::mt19937 rng(17);
  save_vfgf(testing::random_grid(rng, {16, 2, 2, 1}), path_.string());
  EXPECT_EQ(code_of([&] { load_features(path_, 50); }), ErrorCode::FrameCountMismatch);
}

TEST_F(FeatureFile, CorruptFile) {
  std::ofstream(path_, std::ios::binary) << "garbage bytes here";
  EXPECT_EQ(code_of([&] { load_features(path_, 50); }), ErrorCode::BadMagic);
  EXPECT_EQ(code_of([&] { load_features(path_.string() + ".missing", 50); }), ErrorCode::IoFailure);
}

}  // namespace
}  // namespace sftok
