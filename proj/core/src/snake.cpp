#include <cmath>
#include <string>

#include "vfk/snake.hpp"

namespace vfk::snake {

namespace {

void check_weight(double w, const char* name) {
  if (!std::isfinite(w) || w < 0.0) {
    throw InvalidArgument(std::string(name) + " must be finite and non-negative");
  }
}

void check_array(const std::vector<double>& v, std::size_t n, const char* name) {
  if (v.empty()) return;
  if (v.size() != n) {
    throw InvalidArgument(std::string(name) + " has " + std::to_string(v.size()) +
                          " entries, snake has " + std::to_string(n));
  }
  for (double w : v) check_weight(w, name);
}

double squared_norm(int dx, int dy) { return double(dx) * dx + double(dy) * dy; }

}  // namespace

void SnakeParams::validate(std::size_t n) const {
  check_weight(alpha, "alpha");
  check_weight(beta, "beta");
  check_weight(gamma, "gamma");
  check_array(alpha_per_snaxel, n, "alpha_per_snaxel");
  check_array(beta_per_snaxel, n, "beta_per_snaxel");
  check_array(gamma_per_snaxel, n, "gamma_per_snaxel");
}

SnakeParams SnakeParams::scaled(double t) const {
  SnakeParams out = *this;
  out.alpha *= t;
  out.beta *= t;
  out.gamma *= t;
  for (auto& w : out.alpha_per_snaxel) w *= t;
  for (auto& w : out.beta_per_snaxel) w *= t;
  for (auto& w : out.gamma_per_snaxel) w *= t;
  return out;
}

void HardConstraints::validate(std::size_t n, int width, int height) const {
  if (min_spacing && (!std::isfinite(*min_spacing) || *min_spacing < 0)) {
    throw InvalidArgument("min_spacing must be finite and non-negative");
  }
  if (max_spacing && (!std::isfinite(*max_spacing) || *max_spacing < 0)) {
    throw InvalidArgument("max_spacing must be finite and non-negative");
  }
  if (min_spacing && max_spacing && *min_spacing > *max_spacing) {
    throw InvalidArgument("min_spacing exceeds max_spacing");
  }
  if (!bands.empty() && bands.size() != n) {
    throw InvalidArgument("bands has " + std::to_string(bands.size()) + " entries, snake has " +
                          std::to_string(n));
  }
  for (const Band& b : bands) {
    if (b.x0 > b.x1 || b.y0 > b.y1 || b.x0 < 0 || b.y0 < 0 || b.x1 >= width || b.y1 >= height) {
      throw InvalidArgument("band must be a non-empty rectangle inside the image");
    }
  }
  if (column_locked && stride < 1) throw InvalidArgument("stride must be at least 1");
}

bool HardConstraints::spacing_ok(Pixel a, Pixel b) const {
  const double d2 = squared_norm(b.x - a.x, b.y - a.y);
  if (min_spacing && d2 < *min_spacing * *min_spacing) return false;
  if (max_spacing && d2 > *max_spacing * *max_spacing) return false;
  return true;
}

bool HardConstraints::satisfied_by(const Snake& s) const {
  const std::size_t n = s.size();
  if (!bands.empty()) {
    if (bands.size() != n) return false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!bands[i].contains(s.snaxels[i])) return false;
    }
  }
  if (column_locked) {
    for (std::size_t i = 0; i < n; ++i) {
      if (s.snaxels[i].x != int(i) * stride) return false;
    }
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!spacing_ok(s.snaxels[i - 1], s.snaxels[i])) return false;
  }
  if (s.closed && n > 1 && !spacing_ok(s.snaxels[n - 1], s.snaxels[0])) return false;
  return true;
}

double internal_energy(const Snake& s, std::size_t i, const SnakeParams& params) {
  const std::size_t n = s.size();
  if (i >= n) throw std::out_of_range("snaxel index " + std::to_string(i) + " out of range");
  const Pixel cur = s.snaxels[i];
  const bool has_prev = s.closed ? n > 1 : i > 0;
  const bool has_next = s.closed ? n > 1 : i + 1 < n;
  double e = 0.0;
  if (has_prev) {
    const Pixel prev = s.snaxels[(i + n - 1) % n];
    e += params.alpha_at(i) * squared_norm(cur.x - prev.x, cur.y - prev.y);
    if (has_next) {
      const Pixel next = s.snaxels[(i + 1) % n];
      const int k = params.rigidity == RigidityForm::classical ? 2 : 1;
      e += params.beta_at(i) *
           squared_norm(next.x - k * cur.x + prev.x, next.y - k * cur.y + prev.y);
    }
  }
  return 0.5 * e;
}

double snake_energy(const Snake& s, const ScalarField& field, const SnakeParams& params) {
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    total += internal_energy(s, i, params) + image::external_energy(field, s.snaxels[i], params.gamma_at(i));
  }
  return total;
}

Snake horizontal_snake(int width, int row) {
  Snake s;
  s.snaxels.reserve(std::size_t(width));
  for (int x = 0; x < width; ++x) s.snaxels.push_back({x, row});
  return s;
}

}  // namespace vfk::snake
