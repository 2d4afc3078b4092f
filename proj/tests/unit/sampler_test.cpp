#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include "sftok/error.hpp"
#include "sftok/sampler.hpp"
#include "support/oracles.hpp"

namespace sftok {
namespace {
namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("sftok_sampler_" + std::to_string(std::random_device{}()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

// Frame t is filled with gray level t so decoded frames identify their source index.
void write_numbered_video(const fs::path& dir, std::size_t n, std::size_t size = 32) {
  for (std::size_t t = 0; t < n; ++t) {
    const auto level = static_cast<std::uint8_t>(t);
    save_image(make_image(size, size, level, level, level), dir / ("frame_" + std::to_string(t) + ".png"));
  }
}

TEST(UniformIndices, FiftyChooseTen) {
  EXPECT_EQ(uniform_indices(50, 10), (std::vector<std::size_t>{2, 7, 12, 17, 22, 27, 32, 37, 42, 47}));
}

TEST(UniformIndices, FourChooseTwo) { EXPECT_EQ(uniform_indices(4, 2), (std::vector<std::size_t>{1, 3})); }

TEST(UniformIndices, SquareIsIdentity) {
  for (std::size_t t = 1; t <= 300; ++t) {
    std::vector<std::size_t> id(t);
    std::iota(id.begin(), id.end(), 0);
    ASSERT_EQ(uniform_indices(t, t), id) << t;
  }
}

TEST(UniformIndices, ZeroCount) {
  EXPECT_THROW(uniform_indices(0, 3), Error);
  EXPECT_THROW(uniform_indices(3, 0), Error);
}

TEST(UniformIndices, SingleSampleIsMiddle) {
  EXPECT_EQ(uniform_indices(50, 1), std::vector<std::size_t>{25});
  EXPECT_EQ(uniform_indices(1, 1), std::vector<std::size_t>{0});
}

TEST(UniformIndices, RepeatsWhenOversampled) {
  const auto idx = uniform_indices(30, 50);
  ASSERT_EQ(idx.size(), 50u);
  EXPECT_TRUE(std::is_sorted(idx.begin(), idx.end()));
  EXPECT_EQ(idx.front(), 0u);
  EXPECT_EQ(idx.back(), 29u);
  EXPECT_EQ(std::set<std::size_t>(idx.begin(), idx.end()).size(), 30u);
}

TEST(UniformIndices, PropertyUniformSpacing) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::size_t> totals(1, 500);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t total = totals(rng);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, total + 20)(rng);
    const auto idx = uniform_indices(total, k);
    ASSERT_EQ(idx.size(), k);
    for (std::size_t i = 0; i < k; ++i) {
      ASSERT_LT(idx[i], total);
      if (i > 0) ASSERT_GE(idx[i], idx[i - 1]);
    }
    if (k <= total) {
      const double step = static_cast<double>(total) / static_cast<double>(k);
      for (std::size_t i = 1; i < k; ++i) {
        ASSERT_GT(idx[i], idx[i - 1]);
        ASSERT_LE(std::abs(static_cast<double>(idx[i] - idx[i - 1]) - step), 1.0);
      }
    }
  }
}

TEST(SampleFrames, InMemoryPicksMidpointsAndResizes) {
  std::vector<Image> video;
  for (std::size_t t = 0; t < 100; ++t)
    video.push_back(make_image(48, 64, static_cast<std::uint8_t>(t), 0, 0));
  const auto sampled = sample_frames(video, 50);
  EXPECT_EQ(sampled.source_frame_count, 100u);
  EXPECT_EQ(sampled.sampled_indices, uniform_indices(100, 50));
  ASSERT_EQ(sampled.frames.size(), 50u);
  for (std::size_t i = 0; i < 50; ++i) {
    EXPECT_EQ(sampled.frames[i].height, kFrameSize);
    EXPECT_EQ(sampled.frames[i].width, kFrameSize);
    // A constant image stays constant under bilinear resize.
    EXPECT_EQ(sampled.frames[i].at(100, 200, 0), sampled.sampled_indices[i]);
  }
}

TEST(SampleFrames, ShortVideoRepeatsFrames) {
  std::vector<Image> video;
  for (std::size_t t = 0; t < 30; ++t) video.push_back(make_image(8, 8, static_cast<std::uint8_t>(t), 0, 0));
  const auto sampled = sample_frames(video, 50);
  ASSERT_EQ(sampled.frames.size(), 50u);
  EXPECT_EQ(sampled.sampled_indices, uniform_indices(30, 50));
}

TEST(SampleFrames, SingleFrameRepeated) {
  const std::vector<Image> video{make_image(10, 10, 9, 8, 7)};
  const auto sampled = sample_frames(video, 8);
  ASSERT_EQ(sampled.frames.size(), 8u);
  for (const auto& f : sampled.frames) EXPECT_EQ(f, sampled.frames.front());
  EXPECT_EQ(sampled.frames.front().at(0, 0, 2), 7);
}

TEST(SampleFrames, EmptyVideo) {
  try {
    sample_frames(std::span<const Image>{}, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyVideo);
  }
}

TEST(SampleFrames, DirectoryOrderIsNumeric) {
  TempDir dir;
  write_numbered_video(dir.path(), 12);
  const auto files = list_frame_files(dir.path());
  ASSERT_EQ(files.size(), 12u);
  EXPECT_EQ(files[2].filename(), "frame_2.png");
  EXPECT_EQ(files[10].filename(), "frame_10.png");

  const auto sampled = sample_frames(dir.path(), 4);
  EXPECT_EQ(sampled.source_frame_count, 12u);
  ASSERT_EQ(sampled.frames.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(sampled.frames[i].at(0, 0, 0), sampled.sampled_indices[i]);
}

TEST(SampleFrames, DirectoryDecodesRgbOrder) {
  TempDir dir;
  save_image(make_image(kFrameSize, kFrameSize, 200, 100, 50), dir.path() / "0.png");
  const auto sampled = sample_frames(dir.path(), 1);
  EXPECT_EQ(sampled.frames[0].at(5, 5, 0), 200);
  EXPECT_EQ(sampled.frames[0].at(5, 5, 1), 100);
  EXPECT_EQ(sampled.frames[0].at(5, 5, 2), 50);
}

TEST(SampleFrames, MissingOrEmptyDirectory) {
  TempDir dir;
  EXPECT_THROW(sample_frames(dir.path(), 2), Error);
  EXPECT_THROW(sample_frames(dir.path() / "nope", 2), Error);
}

TEST(SampleFrames, UndecodableFrame) {
  TempDir dir;
  std::ofstream(dir.path() / "0.png") << "not a png";
  try {
    sample_frames(dir.path(), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DecodeFailure);
  }
}

TEST(TemporalSubsample, KeepsMidpointFrames) {
  const auto g = testing::iota_grid({50, 2, 2, 1}, 0.0f);
  const auto s = temporal_subsample(g, 10);
  EXPECT_EQ(s.shape(), (GridShape{10, 2, 2, 1}));
  const auto idx = uniform_indices(50, 10);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(s.at(i, 1, 1, 0), g.at(idx[i], 1, 1, 0));
}

TEST(TemporalSubsample, IdentityAndSingleFrame) {
  const auto g = testing::iota_grid({50, 3, 2, 2});
  EXPECT_EQ(temporal_subsample(g, 50), g);
  const auto one = temporal_subsample(g, 1);
  EXPECT_EQ(one.n_frames(), 1u);
  EXPECT_EQ(one.at(0, 0, 0, 0), g.at(25, 0, 0, 0));
}

TEST(TemporalSubsample, IdempotentAtFixedK) {
  std::mt19937 rng(3);
  for (std::size_t n = 1; n <= 40; ++n) {
    const auto g = testing::random_grid(rng, {n, 2, 2, 1});
    for (std::size_t k = 1; k <= n; ++k) {
      const auto once = temporal_subsample(g, k);
      ASSERT_EQ(temporal_subsample(once, k), once) << n << " " << k;
    }
  }
}

TEST(TemporalSubsample, ZeroCount) { EXPECT_THROW(temporal_subsample(testing::iota_grid({2, 1, 1, 1}), 0), Error); }

}  // namespace
}  // namespace sftok
