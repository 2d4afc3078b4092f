#pragma once

#include <cstddef>

#include "sftok/feature_grid.hpp"

namespace sftok {

/// Non-overlapping stride_h x stride_w block means over the spatial axes, per
/// channel. Strides must divide height and width (NonDivisibleStride otherwise).
FeatureGrid avg_pool_stride(const FeatureGrid& grid, std::size_t stride_h, std::size_t stride_w);

/// Block means onto an out_h x out_w target. Cell (i, j) covers rows
/// [floor(i*H/out_h), ceil((i+1)*H/out_h)) and the analogous columns.
/// Throws TargetExceedsInput if a target is 0 or larger than the input.
FeatureGrid adaptive_avg_pool(const FeatureGrid& grid, std::size_t out_h, std::size_t out_w);

/// n*h*w tokens: frame outermost, then row, then column.
TokenSequence flatten(const FeatureGrid& grid);

}  // namespace sftok
