#include <algorithm>
#include <numeric>

#include "vfk/kymo.hpp"

namespace vfk::kymo {

image::ScalarField external_field(const image::GrayImage& img, FieldSource source) {
  return source == FieldSource::intensity_is_gradient ? image::intensity_squared(img)
                                                      : image::gradient_magnitude_squared(img);
}

snake::SnakeParams default_temporal_params() {
  snake::SnakeParams p;
  p.alpha = 0.05;
  p.beta = 0.01;
  p.gamma = 1.0;
  return p;
}

snake::HardConstraints column_band_constraints(int width, int row_lo, int row_hi) {
  snake::HardConstraints hc;
  hc.column_locked = true;
  hc.bands.reserve(std::size_t(width));
  for (int x = 0; x < width; ++x) hc.bands.push_back({x, row_lo, x, row_hi});
  return hc;
}

TemporalSnakes temporal_snake_transform(const image::GrayImage& k, const snake::SnakeParams& params, int midline,
                                        int band_halfwidth, FieldSource source, std::size_t max_iter) {
  if (midline < 0 || midline >= k.height()) {
    throw InvalidArgument("midline row " + std::to_string(midline) + " outside image of height " +
                          std::to_string(k.height()));
  }
  if (band_halfwidth < 0) throw InvalidArgument("band half-width must be non-negative");
  if (midline - band_halfwidth < 0 || midline + band_halfwidth >= k.height()) {
    throw InvalidArgument("band [" + std::to_string(midline - band_halfwidth) + ", " +
                          std::to_string(midline + band_halfwidth) + "] extends outside the image");
  }

  const image::ScalarField field = external_field(k, source);
  const snake::Snake init = snake::horizontal_snake(k.width(), midline);

  auto run = [&](int row_lo, int row_hi) {
    return snake::deform(init, field, params, column_band_constraints(k.width(), row_lo, row_hi), max_iter);
  };
  return {run(midline - band_halfwidth, midline), run(midline, midline + band_halfwidth)};
}

SpatialContours remap_to_spatial(std::span<const ScanlineSnakes> scanlines, int t) {
  SpatialContours out;
  if (scanlines.empty()) return out;
  const std::size_t width = scanlines.front().upper.size();
  for (const auto& s : scanlines) {
    if (s.upper.size() != width || s.lower.size() != width) {
      throw InvalidArgument("scanline snakes have inconsistent widths");
    }
  }
  if (t < 0 || std::size_t(t) >= width) {
    throw InvalidArgument("frame " + std::to_string(t) + " outside [0, " + std::to_string(width) + ")");
  }
  std::vector<std::size_t> order(scanlines.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scanlines[a].scanline_row < scanlines[b].scanline_row; });
  for (std::size_t idx : order) {
    const auto& s = scanlines[idx];
    out.left.push_back({s.upper.snaxels[std::size_t(t)].y, s.scanline_row});
    out.right.push_back({s.lower.snaxels[std::size_t(t)].y, s.scanline_row});
  }
  return out;
}

}  // namespace vfk::kymo
