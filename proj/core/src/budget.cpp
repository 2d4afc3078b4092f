#include "sftok/budget.hpp"

#include <ostream>
#include <string>

#include "sftok/error.hpp"

namespace sftok {
namespace {

template <typename T>
const std::vector<T>& require_axis(const std::vector<T>& axis, const char* name) {
  if (axis.empty()) throw Error(ErrorCode::InvalidSpec, std::string("empty sweep axis '") + name + "'");
  return axis;
}

}  // namespace

BudgetReport plan(std::size_t visual_tokens, std::size_t context_limit, std::size_t reserved_text_tokens) {
  if (context_limit == 0) throw Error(ErrorCode::InvalidArgument, "context_limit must be >= 1");
  BudgetReport r;
  r.visual_tokens = visual_tokens;
  r.reserved_text_tokens = reserved_text_tokens;
  r.context_limit = context_limit;
  r.margin = static_cast<std::int64_t>(context_limit) - static_cast<std::int64_t>(visual_tokens) -
             static_cast<std::int64_t>(reserved_text_tokens);
  r.fits = r.margin >= 0;
  return r;
}

BudgetReport plan(const PathwayConfig& cfg, std::size_t grid_h, std::size_t grid_w, std::size_t context_limit,
                  std::size_t reserved_text_tokens, PathwayMode mode) {
  return plan(token_count(mode, cfg, grid_h, grid_w), context_limit, reserved_text_tokens);
}

std::vector<SweepRow> sweep(const SweepSpec& spec, std::size_t grid_h, std::size_t grid_w,
                            std::size_t context_limit, std::size_t reserved_text_tokens) {
  const bool uses_slow = spec.mode != PathwayMode::fast_only;
  const bool uses_fast = spec.mode != PathwayMode::slow_only;
  const PathwayConfig defaults;

  const auto& frames = require_axis(spec.n_frames, "n_frames");
  const std::vector<std::size_t> fixed_slow{1};
  const std::vector<Stride2D> fixed_stride{Stride2D{1, 1}};
  const std::vector<Stride2D> fixed_fast{Stride2D{defaults.fast_out_h, defaults.fast_out_w}};
  const auto& slows = uses_slow ? require_axis(spec.n_slow, "n_slow") : fixed_slow;
  const auto& strides = uses_slow ? require_axis(spec.slow_stride, "slow_stride") : fixed_stride;
  const auto& fasts = uses_fast ? require_axis(spec.fast_out, "fast_out") : fixed_fast;

  std::vector<SweepRow> rows;
  rows.reserve(frames.size() * slows.size() * strides.size() * fasts.size());
  for (std::size_t n : frames) {
    for (std::size_t s : slows) {
      for (const Stride2D& st : strides) {
        for (const Stride2D& fo : fasts) {
          SweepRow row;
          row.mode = spec.mode;
          row.config = PathwayConfig{n, s, st.h, st.w, fo.h, fo.w};
          row.visual_tokens = token_count(spec.mode, row.config, grid_h, grid_w);
          if (spec.mode == PathwayMode::slow_only) {
            row.out_h = grid_h / st.h;
            row.out_w = grid_w / st.w;
          } else {
            row.out_h = fo.h;
            row.out_w = fo.w;
          }
          row.fits = plan(row.visual_tokens, context_limit, reserved_text_tokens).fits;
          rows.push_back(row);
        }
      }
    }
  }
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "mode,n_frames,n_slow,out_h,out_w,visual_tokens,fits\n";
  for (const auto& r : rows) {
    // n_slow is meaningless without a Slow pathway.
    const std::size_t n_slow = r.mode == PathwayMode::fast_only ? 0 : r.config.n_slow;
    out << to_string(r.mode) << ',' << r.config.n_frames << ',' << n_slow << ',' << r.out_h << ','
        << r.out_w << ',' << r.visual_tokens << ',' << (r.fits ? "true" : "false") << '\n';
  }
}

}  // namespace sftok
