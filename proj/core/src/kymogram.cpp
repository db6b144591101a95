#include <cmath>

#include "vfk/kymo.hpp"
#include "vfk/rng.hpp"

namespace vfk::kymo {

namespace {

// Glottal half-width at offset p of a run of the given symbol and length.
double half_width(char symbol, std::size_t p, std::size_t length, const VSpec& spec) {
  const double lo = spec.w_min;
  const double hi = spec.amplitude;
  const double frac = length > 1 ? double(p) / double(length - 1) : 1.0;
  switch (symbol) {
    case kOpening:
      return lo + (hi - lo) * frac;
    case kClosing:
      return hi - (hi - lo) * frac;
    default:
      return lo;
  }
}

}  // namespace

Kymogram render_kymogram(const VString& v, const VSpec& spec, bool force) {
  spec.validate();
  if (v.empty()) throw RenderError("cannot render an empty vibration string");
  if (!force) {
    const Decision d = decide_vncfl(v, spec);
    if (d.verdict == automata::Verdict::reject) {
      throw RenderError("vibration string rejected at position " + std::to_string(d.violation->position) + ": " +
                        d.violation->reason);
    }
  }

  constexpr std::uint32_t kMaxval = 255;
  const int width = int(v.size());
  const int midline = spec.height / 2;
  image::GrayImage img(width, spec.height, kMaxval);
  std::vector<EdgePair> truth;
  truth.reserve(v.size());

  for (const Run& run : v.runs()) {
    for (std::size_t p = 0; p < run.length; ++p) {
      const int x = int(run.offset + p);
      const int w = int(std::lround(half_width(run.symbol, p, run.length, spec)));
      const EdgePair e{midline - w, midline + w};
      truth.push_back(e);
      img.set(x, e.upper, std::uint32_t(spec.edge_intensity));
      img.set(x, e.lower, std::uint32_t(spec.edge_intensity));
    }
  }

  if (spec.noise > 0) {
    Rng rng(spec.seed, 1);
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) {
        const auto n = std::uint32_t(rng.uniform_int(0, spec.noise));
        img.set(x, y, std::min<std::uint32_t>(kMaxval, img.at(x, y) + n));
      }
    }
  }
  return {std::move(img), std::move(truth), v, midline};
}

int estimate_midline(const image::GrayImage& k) {
  // Compare n^2 * variance = n * sum(v^2) - (sum v)^2 exactly in integers so
  // ties are real ties.
  __extension__ using u128 = unsigned __int128;
  const u128 n = u128(k.width());
  u128 best = 0;
  int best_row = -1;
  for (int y = 0; y < k.height(); ++y) {
    u128 sum = 0, sum_sq = 0;
    for (int x = 0; x < k.width(); ++x) {
      const u128 v = k.at(x, y);
      sum += v;
      sum_sq += v * v;
    }
    const u128 spread = n * sum_sq - sum * sum;
    if (spread > best) {
      best = spread;
      best_row = y;
    }
  }
  if (best_row < 0) throw NoSignalError("no row varies across columns; cannot locate the glottal midline");
  return best_row;
}

}  // namespace vfk::kymo
