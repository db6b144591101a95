#pragma once

// Independent reference implementations used as test oracles. Nothing here
// calls into the library code it is checking.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace vfk::testing {

// Raw std::mt19937_64 output is fully specified by the standard, unlike the
// std:: distributions, so instance generation is reproducible everywhere.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t bits() { return eng_(); }
  // Uniform-ish in [lo, hi]; modulo bias is irrelevant for instance generation.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + std::int64_t(eng_() % std::uint64_t(hi - lo + 1));
  }
  double real(double lo, double hi) { return lo + (hi - lo) * double(eng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 eng_;
};

inline bool naive_contains(const std::u32string& text, const std::u32string& pattern) {
  if (pattern.size() > text.size()) return false;
  for (std::size_t start = 0; start + pattern.size() <= text.size(); ++start) {
    bool all = true;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
      if (text[start + i] != pattern[i]) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

// Every string over `alphabet` of length <= max_len, shortest first, then in
// alphabet order.
inline std::vector<std::u32string> all_strings(const std::u32string& alphabet, std::size_t max_len) {
  std::vector<std::u32string> out{U""};
  std::vector<std::u32string> layer{U""};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::u32string> next;
    for (const auto& s : layer) {
      for (char32_t c : alphabet) next.push_back(s + c);
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

// Pairs in Cantor order, listed by walking anti-diagonals with b increasing.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> diagonal_walk(std::size_t count) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t d = 0; out.size() < count; ++d) {
    for (std::uint64_t b = 0; b <= d && out.size() < count; ++b) out.emplace_back(d - b, b);
  }
  return out;
}

// First `count` reduced fractions (num, den) in the diagonal order over (num, den - 1).
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> rational_walk(std::size_t count) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t d = 0; out.size() < count; ++d) {
    for (std::uint64_t b = 0; b <= d && out.size() < count; ++b) {
      const std::uint64_t num = d - b, den = b + 1;
      if (std::gcd(num, den) == 1) out.emplace_back(num, den);
    }
  }
  return out;
}

struct Pt {
  int x;
  int y;
};

struct Weights {
  std::vector<double> alpha, beta, gamma;  // one per snaxel
  int k = 2;                               // 2: classical second difference, 1: as printed
};

// Energy summed term by term straight from the definitions.
inline double energy_oracle(const std::vector<Pt>& s, bool closed, const std::vector<double>& field, int width,
                            const Weights& w) {
  const long n = long(s.size());
  double total = 0.0;
  for (long i = 0; i < n; ++i) {
    double e = 0.0;
    const bool prev_ok = closed ? n > 1 : i > 0;
    const bool next_ok = closed ? n > 1 : i + 1 < n;
    if (prev_ok) {
      const Pt p = s[std::size_t((i - 1 + n) % n)];
      const double dx = s[std::size_t(i)].x - p.x, dy = s[std::size_t(i)].y - p.y;
      e += w.alpha[std::size_t(i)] * (dx * dx + dy * dy);
      if (next_ok) {
        const Pt q = s[std::size_t((i + 1) % n)];
        const double rx = q.x - w.k * s[std::size_t(i)].x + p.x;
        const double ry = q.y - w.k * s[std::size_t(i)].y + p.y;
        e += w.beta[std::size_t(i)] * (rx * rx + ry * ry);
      }
    }
    total += 0.5 * e;
    total += -w.gamma[std::size_t(i)] * field[std::size_t(s[std::size_t(i)].y) * std::size_t(width) +
                                              std::size_t(s[std::size_t(i)].x)];
  }
  return total;
}

// Exhaustive minimum of energy_oracle over every choice of one candidate per snaxel.
inline double brute_force_minimum(const std::vector<std::vector<Pt>>& candidates, bool closed,
                                  const std::vector<double>& field, int width, const Weights& w) {
  const std::size_t n = candidates.size();
  std::vector<std::size_t> idx(n, 0);
  std::vector<Pt> s(n);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    for (std::size_t i = 0; i < n; ++i) s[i] = candidates[i][idx[i]];
    best = std::min(best, energy_oracle(s, closed, field, width, w));
    std::size_t i = 0;
    while (i < n && ++idx[i] == candidates[i].size()) idx[i++] = 0;
    if (i == n) break;
  }
  return best;
}

// Central differences inside, one-sided at the border, zero on a degenerate axis.
inline std::vector<double> gradient_oracle(const std::vector<double>& img, int w, int h) {
  auto at = [&](int x, int y) { return img[std::size_t(y) * std::size_t(w) + std::size_t(x)]; };
  std::vector<double> out(img.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double gx = 0, gy = 0;
      if (w > 1) gx = x == 0 ? at(1, y) - at(0, y) : x == w - 1 ? at(x, y) - at(x - 1, y) : (at(x + 1, y) - at(x - 1, y)) / 2;
      if (h > 1) gy = y == 0 ? at(x, 1) - at(x, 0) : y == h - 1 ? at(x, y) - at(x, y - 1) : (at(x, y + 1) - at(x, y - 1)) / 2;
      out[std::size_t(y) * std::size_t(w) + std::size_t(x)] = gx * gx + gy * gy;
    }
  }
  return out;
}

}  // namespace vfk::testing
