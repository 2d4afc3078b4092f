#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "sftok/aggregator.hpp"

namespace sftok {

inline constexpr std::size_t kDefaultContextLimit = 8192;  // 4096 native, RoPE scaling factor 2
inline constexpr std::size_t kVicunaContextLimit = 4096;
inline constexpr std::size_t kDefaultReservedTextTokens = 512;

struct BudgetReport {
  std::size_t visual_tokens = 0;
  std::size_t reserved_text_tokens = 0;
  std::size_t context_limit = 0;
  std::int64_t margin = 0;  // context_limit - visual_tokens - reserved_text_tokens
  bool fits = false;        // margin >= 0

  friend bool operator==(const BudgetReport&, const BudgetReport&) = default;
};

/// Over-budget is reported through fits, never thrown.
BudgetReport plan(std::size_t visual_tokens, std::size_t context_limit, std::size_t reserved_text_tokens);

BudgetReport plan(const PathwayConfig& cfg, std::size_t grid_h, std::size_t grid_w, std::size_t context_limit,
                  std::size_t reserved_text_tokens, PathwayMode mode = PathwayMode::slowfast);

struct Stride2D {
  std::size_t h = 1;
  std::size_t w = 1;
  friend bool operator==(const Stride2D&, const Stride2D&) = default;
};

/// Cross-product sweep over pathway settings. Axes a mode does not use are
/// ignored: slow_only ignores fast_out, fast_only ignores n_slow and slow_stride.
struct SweepSpec {
  PathwayMode mode = PathwayMode::slowfast;
  std::vector<std::size_t> n_frames;
  std::vector<std::size_t> n_slow;
  std::vector<Stride2D> slow_stride;
  std::vector<Stride2D> fast_out;
};

struct SweepRow {
  PathwayMode mode = PathwayMode::slowfast;
  PathwayConfig config;
  std::size_t out_h = 0;  // slow output grid for slow_only, fast target otherwise
  std::size_t out_w = 0;
  std::size_t visual_tokens = 0;
  bool fits = false;
};

/// Rows in lexicographic axis order: n_frames, n_slow, slow_stride, fast_out
/// (each in the order given). Throws InvalidSpec on an empty relevant axis.
std::vector<SweepRow> sweep(const SweepSpec& spec, std::size_t grid_h, std::size_t grid_w,
                            std::size_t context_limit, std::size_t reserved_text_tokens);

/// CSV with header mode,n_frames,n_slow,out_h,out_w,visual_tokens,fits.
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

}  // namespace sftok
