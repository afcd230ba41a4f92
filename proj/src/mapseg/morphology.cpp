#include "mvgcn/mapseg/morphology.hpp"

#include <stdexcept>

#include "mvgcn/numkit/kernels.hpp"

namespace mvgcn::mapseg {

BinaryGrid dilate(const BinaryGrid& g, int iterations) {
  if (iterations < 0) throw std::invalid_argument("dilate: negative iteration count");
  BinaryGrid out = g;
  for (int i = 0; i < iterations; ++i)
    out.cells = numkit::dilate_pass(out.cells, out.height, out.width);
  return out;
}

namespace {

// Zhang-Suen deletion test for one pixel. Neighbours are numbered clockwise
// from north: p2..p9. Phase 0 uses the (p2 p4 p6, p4 p6 p8) conditions, phase
// 1 the (p2 p4 p8, p2 p6 p8) ones.
inline bool removable(const BinaryGrid& g, std::int64_t r, std::int64_t c, int phase) {
  auto px = [&](std::int64_t rr, std::int64_t cc) -> int {
    return g.in_bounds(rr, cc) ? g.at(rr, cc) : 0;
  };
  const int p2 = px(r - 1, c), p3 = px(r - 1, c + 1), p4 = px(r, c + 1), p5 = px(r + 1, c + 1);
  const int p6 = px(r + 1, c), p7 = px(r + 1, c - 1), p8 = px(r, c - 1), p9 = px(r - 1, c - 1);
  const int b = p2 + p3 + p4 + p5 + p6 + p7 + p8 + p9;
  if (b < 2 || b > 6) return false;
  int transitions = 0;
  const int ring[9] = {p2, p3, p4, p5, p6, p7, p8, p9, p2};
  for (int k = 0; k < 8; ++k)
    if (ring[k] == 0 && ring[k + 1] == 1) ++transitions;
  if (transitions != 1) return false;
  if (phase == 0) return p2 * p4 * p6 == 0 && p4 * p6 * p8 == 0;
  return p2 * p4 * p8 == 0 && p2 * p6 * p8 == 0;
}

}  // namespace

BinaryGrid thin(const BinaryGrid& g) {
  BinaryGrid cur = g;
  const std::int64_t h = cur.height, w = cur.width;
  std::vector<std::uint8_t> flags(cur.cells.size());
  bool changed = true;
  while (changed) {
    changed = false;
    for (int phase = 0; phase < 2; ++phase) {
      std::fill(flags.begin(), flags.end(), 0);
#pragma omp parallel for schedule(static) if (h * w > 65536)
      for (std::int64_t r = 0; r < h; ++r)
        for (std::int64_t c = 0; c < w; ++c)
          if (cur.at(r, c) && removable(cur, r, c, phase))
            flags[static_cast<std::size_t>(r * w + c)] = 1;

      // Survivor guard: parallel deletion may flag every pixel of a small
      // island at once (isolated 2x2 blocks are the classic case), which
      // would drop a foreground component. A flagged pixel is erased only if
      // some foreground neighbour remains unflagged, so a component can
      // never vanish within one sub-iteration.
      for (std::int64_t r = 0; r < h; ++r) {
        for (std::int64_t c = 0; c < w; ++c) {
          const std::size_t idx = static_cast<std::size_t>(r * w + c);
          if (!flags[idx]) continue;
          bool keeps_anchor = false;
          for (std::int64_t dr = -1; dr <= 1 && !keeps_anchor; ++dr)
            for (std::int64_t dc = -1; dc <= 1; ++dc) {
              if (dr == 0 && dc == 0) continue;
              const std::int64_t rr = r + dr, cc = c + dc;
              if (!cur.in_bounds(rr, cc)) continue;
              const std::size_t nidx = static_cast<std::size_t>(rr * w + cc);
              if (cur.cells[nidx] && !flags[nidx]) {
                keeps_anchor = true;
                break;
              }
            }
          if (keeps_anchor) {
            cur.cells[idx] = 0;
            changed = true;
          }
        }
      }
    }
  }
  return cur;
}

}  // namespace mvgcn::mapseg
