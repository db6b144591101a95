#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>

#include "vfk/snake.hpp"

namespace vfk::snake {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double squared_norm(int dx, int dy) { return double(dx) * dx + double(dy) * dy; }

struct Problem {
  std::vector<std::vector<Pixel>> cands;  // per snaxel, sorted by (y, x)
  std::vector<std::vector<double>> ext;   // -gamma_i * field, per candidate
  const SnakeParams* params;
  const HardConstraints* hc;
  int rigidity_k;

  std::size_t n() const { return cands.size(); }

  double continuity(std::size_t i, Pixel prev, Pixel cur) const {
    return 0.5 * params->alpha_at(i) * squared_norm(cur.x - prev.x, cur.y - prev.y);
  }
  double rigidity(std::size_t i, Pixel prev, Pixel cur, Pixel next) const {
    return 0.5 * params->beta_at(i) *
           squared_norm(next.x - rigidity_k * cur.x + prev.x, next.y - rigidity_k * cur.y + prev.y);
  }
};

struct ChainSolution {
  double cost = kInf;
  std::vector<std::size_t> choice;
};

// Pair-state DP along the chain. When `head` is set, snaxels 0 and 1 are pinned
// to those candidate indices and the closing terms of a loop are added.
ChainSolution solve_chain(const Problem& p, std::optional<std::pair<std::size_t, std::size_t>> head) {
  const std::size_t n = p.n();
  const bool closed = head.has_value();

  // cost[a * m_i + b]: best energy of snaxels 0..i with s_{i-1}=a, s_i=b.
  // back[i][a * m_i + b]: best index of s_{i-2}.
  std::vector<std::vector<std::uint32_t>> back(n);
  std::vector<double> cost;
  {
    const auto& c0 = p.cands[0];
    const auto& c1 = p.cands[1];
    cost.assign(c0.size() * c1.size(), kInf);
    for (std::size_t a = 0; a < c0.size(); ++a) {
      if (closed && a != head->first) continue;
      for (std::size_t b = 0; b < c1.size(); ++b) {
        if (closed && b != head->second) continue;
        if (!p.hc->spacing_ok(c0[a], c1[b])) continue;
        cost[a * c1.size() + b] = p.ext[0][a] + p.ext[1][b] + p.continuity(1, c0[a], c1[b]);
      }
    }
  }

  for (std::size_t i = 2; i < n; ++i) {
    const auto& ca = p.cands[i - 2];
    const auto& cb = p.cands[i - 1];
    const auto& cc = p.cands[i];
    std::vector<double> next(cb.size() * cc.size(), kInf);
    auto& bk = back[i];
    bk.assign(cb.size() * cc.size(), 0);
    for (std::size_t b = 0; b < cb.size(); ++b) {
      for (std::size_t c = 0; c < cc.size(); ++c) {
        if (!p.hc->spacing_ok(cb[b], cc[c])) continue;
        double best = kInf;
        std::uint32_t best_a = 0;
        for (std::size_t a = 0; a < ca.size(); ++a) {
          const double prior = cost[a * cb.size() + b];
          if (prior == kInf) continue;
          const double v = prior + p.rigidity(i - 1, ca[a], cb[b], cc[c]);
          if (v < best) {
            best = v;
            best_a = static_cast<std::uint32_t>(a);
          }
        }
        if (best == kInf) continue;
        next[b * cc.size() + c] = best + p.continuity(i, cb[b], cc[c]) + p.ext[i][c];
        bk[b * cc.size() + c] = best_a;
      }
    }
    cost = std::move(next);
  }

  const auto& cy = p.cands[n - 2];
  const auto& cz = p.cands[n - 1];
  ChainSolution sol;
  std::size_t best_y = 0, best_z = 0;
  for (std::size_t y = 0; y < cy.size(); ++y) {
    for (std::size_t z = 0; z < cz.size(); ++z) {
      double v = cost[y * cz.size() + z];
      if (v == kInf) continue;
      if (closed) {
        const Pixel s0 = p.cands[0][head->first];
        const Pixel s1 = p.cands[1][head->second];
        if (!p.hc->spacing_ok(cz[z], s0)) continue;
        v += p.rigidity(n - 1, cy[y], cz[z], s0) + p.continuity(0, cz[z], s0) + p.rigidity(0, cz[z], s0, s1);
      }
      if (v < sol.cost) {
        sol.cost = v;
        best_y = y;
        best_z = z;
      }
    }
  }
  if (sol.cost == kInf) return sol;

  sol.choice.assign(n, 0);
  sol.choice[n - 1] = best_z;
  sol.choice[n - 2] = best_y;
  for (std::size_t i = n - 1; i >= 2; --i) {
    const std::size_t mi = p.cands[i].size();
    sol.choice[i - 2] = back[i][sol.choice[i - 1] * mi + sol.choice[i]];
  }
  return sol;
}

std::vector<Pixel> candidates_for(std::size_t i, Pixel cur, const ScalarField& field, const HardConstraints& hc,
                                  int window_radius) {
  std::vector<Pixel> out;
  auto admit = [&](Pixel q) {
    if (!field.contains(q)) return;
    if (!hc.bands.empty() && !hc.bands[i].contains(q)) return;
    out.push_back(q);
  };
  if (hc.column_locked) {
    for (int y = 0; y < field.height(); ++y) admit({cur.x, y});
  } else {
    for (int dy = -window_radius; dy <= window_radius; ++dy) {
      for (int dx = -window_radius; dx <= window_radius; ++dx) admit({cur.x + dx, cur.y + dy});
    }
  }
  std::sort(out.begin(), out.end(), [](Pixel a, Pixel b) { return a.y != b.y ? a.y < b.y : a.x < b.x; });
  return out;
}

void validate_inputs(const Snake& s, const ScalarField& field, const SnakeParams& params, const HardConstraints& hc,
                     int window_radius) {
  const std::size_t n = s.size();
  if (n < 3) throw InvalidSnake("deformation needs at least 3 snaxels, got " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!field.contains(s.snaxels[i])) {
      throw InvalidSnake("snaxel " + std::to_string(i) + " at (" + std::to_string(s.snaxels[i].x) + ", " +
                         std::to_string(s.snaxels[i].y) + ") lies outside the " + std::to_string(field.width()) +
                         "x" + std::to_string(field.height()) + " image");
    }
  }
  params.validate(n);
  hc.validate(n, field.width(), field.height());
  if (hc.column_locked) {
    for (std::size_t i = 0; i < n; ++i) {
      if (s.snaxels[i].x != int(i) * hc.stride) {
        throw InvalidSnake("column-locked snaxel " + std::to_string(i) + " must sit in column " +
                           std::to_string(int(i) * hc.stride));
      }
    }
  }
  if (window_radius < 0) throw InvalidArgument("window radius must be non-negative");
}

}  // namespace

Snake dp_deform_step(const Snake& s, const ScalarField& field, const SnakeParams& params, const HardConstraints& hc,
                     int window_radius) {
  validate_inputs(s, field, params, hc, window_radius);
  const std::size_t n = s.size();

  Problem p;
  p.params = &params;
  p.hc = &hc;
  p.rigidity_k = params.rigidity == RigidityForm::classical ? 2 : 1;
  p.cands.resize(n);
  p.ext.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.cands[i] = candidates_for(i, s.snaxels[i], field, hc, window_radius);
    if (p.cands[i].empty()) {
      throw InfeasibleConstraints("snaxel " + std::to_string(i) + " has no admissible candidate position");
    }
    p.ext[i].reserve(p.cands[i].size());
    for (Pixel q : p.cands[i]) p.ext[i].push_back(image::external_energy(field, q, params.gamma_at(i)));
  }

  ChainSolution best;
  if (!s.closed) {
    best = solve_chain(p, std::nullopt);
  } else {
    for (std::size_t a = 0; a < p.cands[0].size(); ++a) {
      for (std::size_t b = 0; b < p.cands[1].size(); ++b) {
        if (!hc.spacing_ok(p.cands[0][a], p.cands[1][b])) continue;
        ChainSolution sol = solve_chain(p, std::make_pair(a, b));
        if (sol.cost < best.cost) best = std::move(sol);
      }
    }
  }
  if (best.cost == kInf) {
    throw InfeasibleConstraints("no candidate snake satisfies the hard constraints");
  }

  Snake out;
  out.closed = s.closed;
  out.snaxels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.snaxels.push_back(p.cands[i][best.choice[i]]);
  return out;
}

DeformResult deform(const Snake& s0, const ScalarField& field, const SnakeParams& params, const HardConstraints& hc,
                    std::size_t max_iter, int window_radius) {
  if (max_iter < 1) throw InvalidArgument("max_iter must be at least 1");
  validate_inputs(s0, field, params, hc, window_radius);

  DeformResult result;
  Snake current = s0;
  double current_energy = snake_energy(current, field, params);
  // An inadmissible start may have lower energy than every admissible snake,
  // so the first move out of it is always taken.
  bool admissible = hc.satisfied_by(current);

  for (std::size_t it = 1; it <= max_iter; ++it) {
    Snake next = dp_deform_step(current, field, params, hc, window_radius);
    const double next_energy = snake_energy(next, field, params);
    result.iterations = it;
    if (next == current || (admissible && !(next_energy < current_energy))) {
      result.energy_trace.push_back(current_energy);
      result.converged = true;
      result.snake = std::move(current);
      return result;
    }
    current = std::move(next);
    current_energy = next_energy;
    admissible = true;
    result.energy_trace.push_back(current_energy);
  }
  result.snake = std::move(current);
  return result;
}

}  // namespace vfk::snake
