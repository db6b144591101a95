#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vfk/errors.hpp"

namespace vfk::image {

struct Pixel {
  int x = 0;  // column
  int y = 0;  // row
  friend bool operator==(const Pixel&, const Pixel&) = default;
  friend auto operator<=>(const Pixel&, const Pixel&) = default;
};

/// Row-major grid of natural intensities in [0, maxval].
class GrayImage {
 public:
  GrayImage(int width, int height, std::uint32_t maxval = 255);
  GrayImage(int width, int height, std::uint32_t maxval, std::vector<std::uint16_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  std::uint32_t maxval() const { return maxval_; }
  bool contains(Pixel p) const { return p.x >= 0 && p.y >= 0 && p.x < width_ && p.y < height_; }

  std::uint16_t at(int x, int y) const { return pixels_[index(x, y)]; }
  void set(int x, int y, std::uint32_t value);  // throws InvalidArgument above maxval

  std::span<const std::uint16_t> pixels() const { return pixels_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::uint32_t maxval_;
  std::vector<std::uint16_t> pixels_;
};

/// Real-valued per-pixel field with the same geometry as its source image.
class ScalarField {
 public:
  ScalarField(int width, int height, std::vector<double> values);
  ScalarField(int width, int height) : ScalarField(width, height, std::vector<double>(std::size_t(width) * height)) {}

  int width() const { return width_; }
  int height() const { return height_; }
  bool contains(Pixel p) const { return p.x >= 0 && p.y >= 0 && p.x < width_ && p.y < height_; }

  double at(int x, int y) const { return values_[std::size_t(y) * width_ + x]; }
  double& at(int x, int y) { return values_[std::size_t(y) * width_ + x]; }
  double at(Pixel p) const { return at(p.x, p.y); }

  std::span<const double> values() const { return values_; }

 private:
  int width_;
  int height_;
  std::vector<double> values_;
};

class PgmError : public Error {
 public:
  using Error::Error;
};

GrayImage load_pgm(std::string_view bytes);
std::string save_pgm(const GrayImage& img, bool binary = true);

GrayImage read_pgm_file(const std::string& path);
void write_pgm_file(const std::string& path, const GrayImage& img, bool binary = true);

// (dI/dx)^2 + (dI/dy)^2. Central differences inside, one-sided at the border,
// zero along an axis of extent 1.
ScalarField gradient_magnitude_squared(const GrayImage& img);

// I^2, for images whose intensities already are a gradient magnitude (the
// synthesized kymograms are rendered that way).
ScalarField intensity_squared(const GrayImage& img);

// -gamma * field(p). Throws std::out_of_range outside the field.
double external_energy(const ScalarField& field, Pixel p, double gamma);

}  // namespace vfk::image
