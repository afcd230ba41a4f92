#include "mvgcn/dataprep/views.hpp"

#include <stdexcept>

namespace mvgcn::dataprep {

void ViewConfig::validate() const {
  for (int v = 0; v < kViewCount; ++v)
    if (lengths[static_cast<std::size_t>(v)] < 0 || lengths[static_cast<std::size_t>(v)] > 6)
      throw std::invalid_argument("view config: lengths must lie in 0..6 (" + kViewNames[static_cast<std::size_t>(v)] + ")");
  for (std::size_t k = 0; k + 1 < spans.size(); ++k)
    if (spans[k] >= spans[k + 1])
      throw std::invalid_argument("view config: spans must be strictly increasing");
  if (spans[0] < 2) throw std::invalid_argument("view config: daily span must exceed the recent step");
  if (active_views() == 0) throw std::invalid_argument("view config: at least one view must be active");
}

std::int64_t ViewConfig::deepest_lookback() const {
  std::int64_t deepest = 0;
  for (int v = 0; v < kViewCount; ++v)
    deepest = std::max(deepest, lengths[static_cast<std::size_t>(v)] * span_of(v));
  return deepest;
}

int ViewConfig::active_views() const {
  int active = 0;
  for (int len : lengths) active += len > 0 ? 1 : 0;
  return active;
}

std::array<std::vector<std::int64_t>, kViewCount> view_indices(std::int64_t t,
                                                               const ViewConfig& cfg) {
  std::array<std::vector<std::int64_t>, kViewCount> out;
  for (int v = 0; v < kViewCount; ++v) {
    const int len = cfg.lengths[static_cast<std::size_t>(v)];
    const std::int64_t span = cfg.span_of(v);
    for (int k = 1; k <= len; ++k) {
      const std::int64_t idx = t - static_cast<std::int64_t>(k) * span;
      if (idx < 0)
        throw std::out_of_range("insufficient history: " + kViewNames[static_cast<std::size_t>(v)] +
                                " view");
      out[static_cast<std::size_t>(v)].push_back(idx);
    }
  }
  return out;
}

}  // namespace mvgcn::dataprep
