#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "vfk/errors.hpp"
#include "vfk/image.hpp"

namespace vfk::snake {

using image::Pixel;
using image::ScalarField;

struct Snake {
  std::vector<Pixel> snaxels;
  bool closed = false;

  std::size_t size() const { return snaxels.size(); }
  friend bool operator==(const Snake&, const Snake&) = default;
};

// Second-difference form used by the rigidity term.
//   classical:  |s[i+1] - 2 s[i] + s[i-1]|^2
//   as_printed: |s[i+1] -   s[i] + s[i-1]|^2  (kept for literal reproduction)
enum class RigidityForm { classical, as_printed };

/// Weights of the snake energy. Each per-snaxel array, when non-empty,
/// overrides the matching global weight and must have one entry per snaxel.
struct SnakeParams {
  double alpha = 0.0;  // continuity
  double beta = 0.0;   // rigidity
  double gamma = 1.0;  // image data
  std::vector<double> alpha_per_snaxel;
  std::vector<double> beta_per_snaxel;
  std::vector<double> gamma_per_snaxel;
  RigidityForm rigidity = RigidityForm::classical;

  double alpha_at(std::size_t i) const { return alpha_per_snaxel.empty() ? alpha : alpha_per_snaxel[i]; }
  double beta_at(std::size_t i) const { return beta_per_snaxel.empty() ? beta : beta_per_snaxel[i]; }
  double gamma_at(std::size_t i) const { return gamma_per_snaxel.empty() ? gamma : gamma_per_snaxel[i]; }

  // Throws InvalidArgument for negative/non-finite weights or wrong array lengths.
  void validate(std::size_t n) const;

  // All weights multiplied by t.
  SnakeParams scaled(double t) const;
};

// Inclusive pixel rectangle.
struct Band {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;
  bool contains(Pixel p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
  friend bool operator==(const Band&, const Band&) = default;
};

/// Conditions every admissible snake must satisfy.
struct HardConstraints {
  std::optional<double> min_spacing;  // Euclidean distance between consecutive snaxels
  std::optional<double> max_spacing;
  std::vector<Band> bands;            // empty, or one per snaxel
  bool column_locked = false;         // snaxel i sits in column i * stride; only y moves
  int stride = 1;

  void validate(std::size_t n, int width, int height) const;
  bool spacing_ok(Pixel a, Pixel b) const;
  bool satisfied_by(const Snake& s) const;
};

struct DeformResult {
  Snake snake;
  std::vector<double> energy_trace;  // total energy after each iteration
  std::size_t iterations = 0;
  bool converged = false;
};

class InvalidSnake : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class InfeasibleConstraints : public Error {
 public:
  using Error::Error;
};

// 1/2 [alpha_i |s_i - s_{i-1}|^2 + beta_i R_i]. On open chains, terms whose
// neighbours do not exist are dropped; closed chains wrap modulo n.
double internal_energy(const Snake& s, std::size_t i, const SnakeParams& params);

// Sum over snaxels of internal energy plus -gamma_i * field(s_i).
double snake_energy(const Snake& s, const ScalarField& field, const SnakeParams& params);

inline constexpr int kDefaultWindowRadius = 1;

/// One globally optimal move of every snaxel at once.
///
/// Each snaxel may move within a (2r+1)^2 window around its current position,
/// or anywhere along its column (restricted to its band) when the snake is
/// column-locked. The optimum over this candidate set is found by dynamic
/// programming over pairs of consecutive positions, which keeps the
/// second-difference term exact. Closed snakes additionally enumerate the
/// first two positions. Candidates breaking a hard constraint are excluded.
/// Among equal-cost choices the smallest candidate by (y, x) wins.
///
/// Throws InvalidSnake for malformed input and InfeasibleConstraints when no
/// admissible snake exists in the candidate set.
Snake dp_deform_step(const Snake& s, const ScalarField& field, const SnakeParams& params,
                     const HardConstraints& hc, int window_radius = kDefaultWindowRadius);

// Repeats dp_deform_step until a fixed point (no strict energy decrease) or
// max_iter iterations.
DeformResult deform(const Snake& s0, const ScalarField& field, const SnakeParams& params,
                    const HardConstraints& hc, std::size_t max_iter,
                    int window_radius = kDefaultWindowRadius);

// Column-locked open snake with one snaxel per column at `row`.
Snake horizontal_snake(int width, int row);

}  // namespace vfk::snake
