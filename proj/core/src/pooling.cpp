#include "sftok/pooling.hpp"

#include <string>
#include <vector>

#include "sftok/error.hpp"

namespace sftok {
namespace {

struct Bounds {
  std::size_t begin;
  std::size_t end;
};

Bounds adaptive_bounds(std::size_t index, std::size_t in, std::size_t out) {
  return {index * in / out, ((index + 1) * in + out - 1) / out};
}

// Shared kernel: each output cell (i, j) averages rows rows[i] x cols cols[j].
FeatureGrid pool_blocks(const FeatureGrid& grid, const std::vector<Bounds>& rows,
                        const std::vector<Bounds>& cols) {
  const std::size_t n = grid.n_frames(), c = grid.channels();
  const std::size_t oh = rows.size(), ow = cols.size();
  std::vector<float> out(n * oh * ow * c);
  std::vector<double> acc(c);
  const auto src = grid.data();

  for (std::size_t f = 0; f < n; ++f) {
    for (std::size_t i = 0; i < oh; ++i) {
      for (std::size_t j = 0; j < ow; ++j) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (std::size_t r = rows[i].begin; r < rows[i].end; ++r) {
          for (std::size_t q = cols[j].begin; q < cols[j].end; ++q) {
            const float* cell = src.data() + grid.offset(f, r, q);
            for (std::size_t ch = 0; ch < c; ++ch) acc[ch] += cell[ch];
          }
        }
        const double count = static_cast<double>((rows[i].end - rows[i].begin) * (cols[j].end - cols[j].begin));
        float* dst = out.data() + ((f * oh + i) * ow + j) * c;
        for (std::size_t ch = 0; ch < c; ++ch) dst[ch] = static_cast<float>(acc[ch] / count);
      }
    }
  }
  return FeatureGrid(GridShape{n, oh, ow, c}, std::move(out));
}

void check_stride(const char* axis, std::size_t extent, std::size_t stride) {
  if (stride == 0) throw Error(ErrorCode::NonDivisibleStride, std::string(axis) + " stride is 0");
  if (extent % stride != 0)
    throw Error(ErrorCode::NonDivisibleStride, std::string(axis) + ": " + std::to_string(extent) + " % " +
                                                   std::to_string(stride) + " = " +
                                                   std::to_string(extent % stride));
}

void check_target(const char* axis, std::size_t extent, std::size_t target) {
  if (target == 0 || target > extent)
    throw Error(ErrorCode::TargetExceedsInput, std::string(axis) + " target " + std::to_string(target) +
                                                   " not in [1, " + std::to_string(extent) + "]");
}

}  // namespace

FeatureGrid avg_pool_stride(const FeatureGrid& grid, std::size_t stride_h, std::size_t stride_w) {
  check_stride("height", grid.height(), stride_h);
  check_stride("width", grid.width(), stride_w);
  if (stride_h == 1 && stride_w == 1) return grid;
  std::vector<Bounds> rows(grid.height() / stride_h), cols(grid.width() / stride_w);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = {i * stride_h, (i + 1) * stride_h};
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = {j * stride_w, (j + 1) * stride_w};
  return pool_blocks(grid, rows, cols);
}

FeatureGrid adaptive_avg_pool(const FeatureGrid& grid, std::size_t out_h, std::size_t out_w) {
  check_target("height", grid.height(), out_h);
  check_target("width", grid.width(), out_w);
  if (out_h == grid.height() && out_w == grid.width()) return grid;
  std::vector<Bounds> rows(out_h), cols(out_w);
  for (std::size_t i = 0; i < out_h; ++i) rows[i] = adaptive_bounds(i, grid.height(), out_h);
  for (std::size_t j = 0; j < out_w; ++j) cols[j] = adaptive_bounds(j, grid.width(), out_w);
  return pool_blocks(grid, rows, cols);
}

TokenSequence flatten(const FeatureGrid& grid) {
  // The canonical grid layout already is frame -> row -> column -> channel.
  const auto d = grid.data();
  return TokenSequence(grid.channels(), std::vector<float>(d.begin(), d.end()));
}

}  // namespace sftok
