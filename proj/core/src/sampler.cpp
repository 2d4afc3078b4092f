#include "sftok/sampler.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>

#include "sftok/error.hpp"

namespace sftok {
namespace fs = std::filesystem;

namespace {

bool is_image_file(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

// Last run of digits in the file stem, used for numeric ordering.
std::optional<unsigned long long> frame_number(const fs::path& p) {
  const std::string stem = p.stem().string();
  auto end = std::find_if(stem.rbegin(), stem.rend(), [](unsigned char c) { return std::isdigit(c); });
  if (end == stem.rend()) return std::nullopt;
  auto begin = std::find_if(end, stem.rend(), [](unsigned char c) { return !std::isdigit(c); });
  const std::string digits(begin.base(), end.base());
  return std::stoull(digits.substr(0, 18));
}

cv::Mat to_mat(const Image& image) {
  return cv::Mat(static_cast<int>(image.height), static_cast<int>(image.width), CV_8UC3,
                 const_cast<std::uint8_t*>(image.rgb.data()));
}

Image from_mat(const cv::Mat& mat) {
  Image out;
  out.height = static_cast<std::size_t>(mat.rows);
  out.width = static_cast<std::size_t>(mat.cols);
  out.rgb.resize(out.height * out.width * 3);
  cv::Mat dst(mat.rows, mat.cols, CV_8UC3, out.rgb.data());
  mat.copyTo(dst);
  return out;
}

}  // namespace

Image make_image(std::size_t height, std::size_t width, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  Image img{height, width, std::vector<std::uint8_t>(height * width * 3)};
  for (std::size_t i = 0; i < height * width; ++i) {
    img.rgb[3 * i] = r;
    img.rgb[3 * i + 1] = g;
    img.rgb[3 * i + 2] = b;
  }
  return img;
}

std::vector<std::size_t> uniform_indices(std::size_t total, std::size_t k) {
  if (total == 0 || k == 0)
    throw Error(ErrorCode::ZeroCount, "total=" + std::to_string(total) + ", k=" + std::to_string(k));
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = (2 * i + 1) * total / (2 * k);
  return idx;
}

Image resize_bilinear(const Image& image, std::size_t height, std::size_t width) {
  if (image.height == height && image.width == width) return image;
  if (image.height == 0 || image.width == 0 || image.rgb.size() != image.height * image.width * 3)
    throw Error(ErrorCode::DecodeFailure, "malformed image buffer");
  cv::Mat resized;
  cv::resize(to_mat(image), resized, cv::Size(static_cast<int>(width), static_cast<int>(height)), 0, 0,
             cv::INTER_LINEAR);
  return from_mat(resized);
}

VideoFrames sample_frames(std::span<const Image> frames, std::size_t n) {
  if (frames.empty()) throw Error(ErrorCode::EmptyVideo, "video has no frames");
  VideoFrames out;
  out.source_frame_count = frames.size();
  out.sampled_indices = uniform_indices(frames.size(), n);
  out.frames.reserve(n);
  for (std::size_t i : out.sampled_indices) out.frames.push_back(resize_bilinear(frames[i], kFrameSize, kFrameSize));
  return out;
}

std::vector<fs::path> list_frame_files(const fs::path& video) {
  std::error_code ec;
  if (fs::is_regular_file(video, ec)) {
    if (!is_image_file(video)) throw Error(ErrorCode::DecodeFailure, "not a PNG/JPEG file: " + video.string());
    return {video};
  }
  if (!fs::is_directory(video, ec)) throw Error(ErrorCode::EmptyVideo, "no video at " + video.string());

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(video))
    if (entry.is_regular_file() && is_image_file(entry.path())) files.push_back(entry.path());
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    const auto na = frame_number(a), nb = frame_number(b);
    if (na && nb && *na != *nb) return *na < *nb;
    if (na.has_value() != nb.has_value()) return na.has_value();
    return a.filename() < b.filename();
  });
  if (files.empty()) throw Error(ErrorCode::EmptyVideo, "no image frames in " + video.string());
  return files;
}

Image load_image(const fs::path& path) {
  cv::Mat bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
  if (bgr.empty()) throw Error(ErrorCode::DecodeFailure, "cannot decode " + path.string());
  cv::Mat rgb;
  cv::cvtColor(bgr, rgb, cv::COLOR_BGR2RGB);
  return from_mat(rgb);
}

void save_image(const Image& image, const fs::path& path) {
  cv::Mat bgr;
  cv::cvtColor(to_mat(image), bgr, cv::COLOR_RGB2BGR);
  if (!cv::imwrite(path.string(), bgr)) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
}

VideoFrames sample_frames(const fs::path& video, std::size_t n) {
  const auto files = list_frame_files(video);
  VideoFrames out;
  out.source_frame_count = files.size();
  out.sampled_indices = uniform_indices(files.size(), n);
  out.frames.reserve(n);
  // Repeated indices reuse the previous decode.
  std::optional<std::size_t> last;
  for (std::size_t i : out.sampled_indices) {
    if (last == i) {
      out.frames.push_back(out.frames.back());
      continue;
    }
    out.frames.push_back(resize_bilinear(load_image(files[i]), kFrameSize, kFrameSize));
    last = i;
  }
  return out;
}

FeatureGrid temporal_subsample(const FeatureGrid& grid, std::size_t k) {
  const auto idx = uniform_indices(grid.n_frames(), k);
  const std::size_t frame_len = grid.height() * grid.width() * grid.channels();
  std::vector<float> data;
  data.reserve(k * frame_len);
  const auto src = grid.data();
  for (std::size_t f : idx) {
    const auto frame = src.subspan(f * frame_len, frame_len);
    data.insert(data.end(), frame.begin(), frame.end());
  }
  return FeatureGrid(GridShape{k, grid.height(), grid.width(), grid.channels()}, std::move(data));
}

}  // namespace sftok
