#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace mvgcn::dataprep {

inline constexpr int kViewCount = 5;
inline const std::array<std::string, kViewCount> kViewNames = {"recent", "daily", "weekly",
                                                               "monthly", "quarterly"};

/// Lengths and spans of the five temporal views. Spans are timestep offsets;
/// the recent view always uses consecutive steps.
struct ViewConfig {
  std::array<int, kViewCount> lengths{3, 3, 3, 3, 3};
  std::array<std::int64_t, kViewCount - 1> spans{24, 168, 720, 2160};  // daily..quarterly

  void validate() const;  // lengths in 0..6, spans strictly increasing
  std::int64_t span_of(int view) const { return view == 0 ? 1 : spans[static_cast<std::size_t>(view - 1)]; }
  /// Largest index offset any active view reaches back from the target.
  std::int64_t deepest_lookback() const;
  int active_views() const;
};

/// Key-timestep index sets for a target t: view v holds t - k * span_v for
/// k = 1..length_v, most recent first. Throws naming the first view whose
/// indices would run negative.
std::array<std::vector<std::int64_t>, kViewCount> view_indices(std::int64_t t,
                                                               const ViewConfig& cfg);

}  // namespace mvgcn::dataprep
