#include <array>
#include <cmath>

#include "vfk/kymo.hpp"
#include "vfk/rng.hpp"

namespace vfk::kymo {

namespace {

bool is_vibration_symbol(char c) { return c == kOpening || c == kClosing || c == kClosed; }

char cyclic_successor(char c) {
  switch (c) {
    case kOpening:
      return kClosing;
    case kClosing:
      return kClosed;
    default:
      return kOpening;
  }
}

void check_proportions(const Proportions& p) {
  for (double c : {p.c1, p.c2, p.c3}) {
    if (!std::isfinite(c) || c <= 0) throw InvalidArgument("proportionality constants must be positive");
  }
  if (!(p.eps >= 0.0 && p.eps < 1.0)) throw InvalidArgument("eps must be in [0, 1)");
}

}  // namespace

ForeignSymbolError::ForeignSymbolError(char symbol, std::size_t position)
    : InvalidArgument("symbol '" + std::string(1, symbol) + "' at position " + std::to_string(position) +
                      " is not one of o, c, x"),
      position_(position) {}

VString::VString(std::string text) : text_(std::move(text)) {
  for (std::size_t i = 0; i < text_.size(); ++i) {
    if (!is_vibration_symbol(text_[i])) throw ForeignSymbolError(text_[i], i);
  }
}

std::vector<Run> VString::runs() const {
  std::vector<Run> out;
  for (std::size_t i = 0; i < text_.size(); ++i) {
    if (out.empty() || out.back().symbol != text_[i]) {
      out.push_back({text_[i], 1, i});
    } else {
      ++out.back().length;
    }
  }
  return out;
}

void VSpec::validate() const {
  if (i <= 1 || j <= 1 || k <= 1) throw InvalidArgument("run lengths i, j, k must all exceed 1");
  check_proportions({c1, c2, c3, eps});
  if (periods < 0) throw InvalidArgument("periods must be non-negative");
  if (amplitude < 1) throw InvalidArgument("amplitude must be at least 1");
  if (!std::isfinite(w_min) || w_min < 0 || w_min > amplitude) {
    throw InvalidArgument("w_min must lie in [0, amplitude]");
  }
  if (jitter < 0) throw InvalidArgument("jitter must be non-negative");
  if (noise < 0) throw InvalidArgument("noise must be non-negative");
  if (!(2 * (amplitude + 1) < height)) {
    throw InvalidArgument("height " + std::to_string(height) + " too small for amplitude " +
                          std::to_string(amplitude) + ": need 2*(amplitude+1) < height");
  }
  if (edge_intensity < 1 || edge_intensity > 255) throw InvalidArgument("edge_intensity must be in [1, 255]");
}

double proportion_deviation(double c1, double c2, double c3, double i, double j, double k) {
  const std::array<double, 3> v{c1 * i, c2 * j, c3 * k};
  const double mean = (v[0] + v[1] + v[2]) / 3.0;
  double worst = 0.0;
  for (double x : v) worst = std::max(worst, std::abs(x - mean) / mean);
  return worst;
}

VString generate_vstring(const VSpec& spec) {
  spec.validate();
  struct Lengths {
    int i, j, k;
  };
  // Every admissible per-block perturbation, in a fixed enumeration order.
  std::vector<Lengths> admissible;
  const int J = spec.jitter;
  for (int di = -J; di <= J; ++di) {
    for (int dj = -J; dj <= J; ++dj) {
      for (int dk = -J; dk <= J; ++dk) {
        const Lengths l{std::max(2, spec.i + di), std::max(2, spec.j + dj), std::max(2, spec.k + dk)};
        if (proportion_deviation(spec.c1, spec.c2, spec.c3, l.i, l.j, l.k) <= spec.eps) admissible.push_back(l);
      }
    }
  }
  if (admissible.empty()) {
    throw UnsatisfiableSpec("no jittered run lengths satisfy c1*i ~ c2*j ~ c3*k within eps=" +
                            std::to_string(spec.eps));
  }

  Rng rng(spec.seed, 0);
  std::string text;
  for (int p = 0; p < spec.periods; ++p) {
    const Lengths& l = admissible[std::size_t(rng.uniform_int(0, std::int64_t(admissible.size()) - 1))];
    text.append(std::size_t(l.i), kClosed);
    text.append(std::size_t(l.j), kOpening);
    text.append(std::size_t(l.k), kClosing);
  }
  return VString(std::move(text));
}

Decision decide_vncfl(const VString& w, const Proportions& p) {
  check_proportions(p);
  Decision d{automata::Verdict::accept, w.runs(), std::nullopt};
  const auto& runs = d.runs;
  auto reject = [&](std::size_t r, std::string reason) {
    d.verdict = automata::Verdict::reject;
    d.violation = Violation{r, runs[r].offset, runs[r].symbol, runs[r].length, std::move(reason)};
    return d;
  };

  // The first symbol fixes which cyclic form is being read.
  for (std::size_t block = 0; block * 3 < runs.size(); ++block) {
    const std::size_t first = block * 3;
    for (std::size_t r = first; r < first + 3; ++r) {
      if (r >= runs.size()) return reject(runs.size() - 1, "incomplete vibration cycle at end of string");
      if (r > 0 && runs[r].symbol != cyclic_successor(runs[r - 1].symbol)) {
        return reject(r, "phase out of cyclic order o -> c -> x");
      }
      if (runs[r].length <= 1) return reject(r, "run length must exceed 1");
    }
    double len_x = 0, len_o = 0, len_c = 0;
    for (std::size_t r = first; r < first + 3; ++r) {
      const double len = double(runs[r].length);
      if (runs[r].symbol == kClosed) len_x = len;
      if (runs[r].symbol == kOpening) len_o = len;
      if (runs[r].symbol == kClosing) len_c = len;
    }
    if (proportion_deviation(p.c1, p.c2, p.c3, len_x, len_o, len_c) > p.eps) {
      const double mean = (p.c1 * len_x + p.c2 * len_o + p.c3 * len_c) / 3.0;
      for (std::size_t r = first; r < first + 3; ++r) {
        const double c = runs[r].symbol == kClosed ? p.c1 : runs[r].symbol == kOpening ? p.c2 : p.c3;
        if (std::abs(c * double(runs[r].length) - mean) / mean > p.eps) {
          return reject(r, "run lengths violate c1*i ~ c2*j ~ c3*k");
        }
      }
      return reject(first, "run lengths violate c1*i ~ c2*j ~ c3*k");
    }
  }
  return d;
}

Decision decide_vncfl(const VString& w, const VSpec& spec) {
  return decide_vncfl(w, Proportions{spec.c1, spec.c2, spec.c3, spec.eps});
}

Preset parse_preset(std::string_view name) {
  if (name == "habitual") return Preset::habitual;
  if (name == "high") return Preset::high;
  if (name == "breathy") return Preset::breathy;
  if (name == "falsetto") return Preset::falsetto;
  throw InvalidArgument("unknown preset '" + std::string(name) + "'");
}

std::string_view to_string(Preset p) {
  switch (p) {
    case Preset::habitual:
      return "habitual";
    case Preset::high:
      return "high";
    case Preset::breathy:
      return "breathy";
    case Preset::falsetto:
      return "falsetto";
  }
  return "?";
}

// Calibrated by eye, not measured. The constants make c1*i = c2*j = c3*k exactly.
VSpec preset(Preset p) {
  VSpec s;
  switch (p) {
    case Preset::habitual:
      s.i = 6, s.j = 8, s.k = 8, s.c1 = 4, s.c2 = 3, s.c3 = 3, s.amplitude = 12, s.w_min = 0;
      break;
    case Preset::high:
      s.i = 3, s.j = 4, s.k = 4, s.c1 = 4, s.c2 = 3, s.c3 = 3, s.amplitude = 8, s.w_min = 0;
      break;
    case Preset::breathy:
      s.i = 2, s.j = 8, s.k = 8, s.c1 = 4, s.c2 = 1, s.c3 = 1, s.amplitude = 14, s.w_min = 2;
      break;
    case Preset::falsetto:
      s.i = 2, s.j = 5, s.k = 5, s.c1 = 5, s.c2 = 2, s.c3 = 2, s.amplitude = 5, s.w_min = 1;
      break;
  }
  s.height = 64;
  s.edge_intensity = 200;
  s.noise = 0;
  s.jitter = 0;
  return s;
}

std::vector<std::pair<Preset, VSpec>> preset_table() {
  std::vector<std::pair<Preset, VSpec>> out;
  for (Preset p : {Preset::habitual, Preset::high, Preset::breathy, Preset::falsetto}) out.emplace_back(p, preset(p));
  return out;
}

}  // namespace vfk::kymo
