#include <stdexcept>

#include "vfk/image.hpp"

namespace vfk::image {

GrayImage::GrayImage(int width, int height, std::uint32_t maxval)
    : GrayImage(width, height, maxval,
                std::vector<std::uint16_t>(std::size_t(std::max(width, 0)) * std::max(height, 0), 0)) {}

GrayImage::GrayImage(int width, int height, std::uint32_t maxval, std::vector<std::uint16_t> pixels)
    : width_(width), height_(height), maxval_(maxval), pixels_(std::move(pixels)) {
  if (width_ < 1 || height_ < 1) throw InvalidArgument("image dimensions must be at least 1x1");
  if (maxval_ < 1 || maxval_ > 65535) throw InvalidArgument("maxval must be in [1, 65535]");
  if (pixels_.size() != std::size_t(width_) * std::size_t(height_)) {
    throw InvalidArgument("pixel count does not match width*height");
  }
  for (auto v : pixels_) {
    if (v > maxval_) throw InvalidArgument("pixel intensity exceeds maxval");
  }
}

void GrayImage::set(int x, int y, std::uint32_t value) {
  if (!contains({x, y})) throw std::out_of_range("pixel outside image");
  if (value > maxval_) throw InvalidArgument("pixel intensity exceeds maxval");
  pixels_[index(x, y)] = static_cast<std::uint16_t>(value);
}

ScalarField::ScalarField(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  if (width_ < 1 || height_ < 1) throw InvalidArgument("field dimensions must be at least 1x1");
  if (values_.size() != std::size_t(width_) * std::size_t(height_)) {
    throw InvalidArgument("field value count does not match width*height");
  }
}

namespace {

// Derivative along one axis for sample index i of n, with get(i) reading it.
template <typename Get>
double derivative(int i, int n, Get get) {
  if (n == 1) return 0.0;
  if (i == 0) return get(1) - get(0);
  if (i == n - 1) return get(n - 1) - get(n - 2);
  return (get(i + 1) - get(i - 1)) / 2.0;
}

}  // namespace

ScalarField gradient_magnitude_squared(const GrayImage& img) {
  const int w = img.width();
  const int h = img.height();
  ScalarField out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double gx = derivative(x, w, [&](int i) { return double(img.at(i, y)); });
      const double gy = derivative(y, h, [&](int j) { return double(img.at(x, j)); });
      out.at(x, y) = gx * gx + gy * gy;
    }
  }
  return out;
}

ScalarField intensity_squared(const GrayImage& img) {
  ScalarField out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const double v = img.at(x, y);
      out.at(x, y) = v * v;
    }
  }
  return out;
}

double external_energy(const ScalarField& field, Pixel p, double gamma) {
  if (!(gamma >= 0.0)) throw InvalidArgument("gamma must be non-negative");
  if (!field.contains(p)) {
    throw std::out_of_range("pixel (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                            ") outside field");
  }
  return -gamma * field.at(p);
}

}  // namespace vfk::image
