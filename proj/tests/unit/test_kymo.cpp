#include <gtest/gtest.h>

#include "oracles.hpp"
#include "vfk/kymo.hpp"

namespace {

using namespace vfk::kymo;
using vfk::automata::Verdict;
using vfk::testing::Gen;

VSpec plain(int i, int j, int k, int periods) {
  VSpec s;
  s.i = i, s.j = j, s.k = k, s.periods = periods;
  s.c1 = 1, s.c2 = 1, s.c3 = 1;
  return s;
}

// Spec whose base lengths satisfy the proportionality test with eps = 0.
VSpec exact_spec(Gen& g) {
  VSpec s;
  s.i = int(g.range(2, 9)), s.j = int(g.range(2, 9)), s.k = int(g.range(2, 9));
  s.c1 = double(s.j * s.k), s.c2 = double(s.i * s.k), s.c3 = double(s.i * s.j);
  s.eps = 0.0;
  s.jitter = 0;
  s.periods = int(g.range(1, 6));
  s.seed = g.bits();
  return s;
}

TEST(VString, RunsAndForeignSymbols) {
  const VString v("xxoooc");
  const std::vector<vfk::kymo::Run> want{{'x', 2, 0}, {'o', 3, 2}, {'c', 1, 5}};
  EXPECT_EQ(v.runs(), want);
  try {
    VString("xxAo");
    FAIL();
  } catch (const ForeignSymbolError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
  EXPECT_TRUE(VString("").runs().empty());
}

TEST(Generate, DirectExpansionWithoutJitter) {
  EXPECT_EQ(generate_vstring(plain(4, 4, 4, 2)).text(), "xxxxooooccccxxxxoooocccc");
  EXPECT_TRUE(generate_vstring(plain(4, 4, 4, 0)).empty());
}

TEST(Generate, SeededJitterIsDeterministic) {
  VSpec s = plain(6, 8, 8, 10);
  s.jitter = 1;
  s.eps = 0.3;
  s.seed = 1234;
  EXPECT_EQ(generate_vstring(s), generate_vstring(s));
  VSpec other = s;
  other.seed = 1235;
  EXPECT_NE(generate_vstring(s), generate_vstring(other));
}

TEST(Generate, JitterStaysInRangeAndConstraint) {
  Gen g(10);
  for (int t = 0; t < 50; ++t) {
    VSpec s = plain(int(g.range(2, 10)), int(g.range(2, 10)), int(g.range(2, 10)), 6);
    s.jitter = int(g.range(0, 2));
    s.eps = 0.6;
    s.seed = g.bits();
    VString v;
    try {
      v = generate_vstring(s);
    } catch (const UnsatisfiableSpec&) {
      continue;
    }
    const auto runs = v.runs();
    ASSERT_EQ(runs.size(), 18u);
    for (std::size_t b = 0; b < runs.size(); b += 3) {
      const auto i = int(runs[b].length), j = int(runs[b + 1].length), k = int(runs[b + 2].length);
      EXPECT_LE(std::abs(i - s.i), s.jitter);
      EXPECT_LE(std::abs(j - s.j), s.jitter);
      EXPECT_LE(std::abs(k - s.k), s.jitter);
      EXPECT_LE(proportion_deviation(1, 1, 1, i, j, k), s.eps);
    }
  }
}

TEST(Generate, UnsatisfiableSpec) {
  VSpec s = plain(2, 9, 9, 3);
  s.eps = 0.0;
  EXPECT_THROW(generate_vstring(s), UnsatisfiableSpec);
}

TEST(Decide, Examples) {
  EXPECT_EQ(decide_vncfl(VString("xxoocc"), Proportions{1, 1, 1, 0}).verdict, Verdict::accept);
  const Decision d = decide_vncfl(VString("xoc"), Proportions{});
  EXPECT_EQ(d.verdict, Verdict::reject);
  ASSERT_TRUE(d.violation);
  EXPECT_EQ(d.violation->run_index, 0u);
  EXPECT_EQ(decide_vncfl(VString(""), Proportions{}).verdict, Verdict::accept);
}

TEST(Decide, AllThreeCyclicForms) {
  for (const char* w : {"xxoocc", "ooccxx", "ccxxoo", "ooccxxooccxx"}) {
    EXPECT_EQ(decide_vncfl(VString(w), Proportions{1, 1, 1, 0}).verdict, Verdict::accept) << w;
  }
}

TEST(Decide, ViolationsNameTheFirstBadRun) {
  auto violation = [](const char* w, double eps = 0.0) {
    return decide_vncfl(VString(w), Proportions{1, 1, 1, eps}).violation;
  };
  EXPECT_EQ(violation("xxccoo")->run_index, 1u);          // out of cyclic order
  EXPECT_EQ(violation("xxooccxxoo")->run_index, 4u);      // incomplete cycle
  EXPECT_EQ(violation("xxooccxxxxxxoocc")->run_index, 3u);  // proportions
  EXPECT_EQ(violation("xxoocccccccc")->position, 0u);
  EXPECT_EQ(violation("xxoocccccccc", 0.6)->position, 4u);
}

TEST(Decide, ToleranceBoundary) {
  // v = (6, 8, 8): mean 22/3, worst deviation (22/3 - 6) / (22/3) = 2/11.
  EXPECT_EQ(decide_vncfl(VString("xxxxxxooooooooccccccccc"), Proportions{1, 1, 1, 0.2}).verdict, Verdict::reject);
  const VString w("xxxxxxoooooooocccccccc");
  EXPECT_EQ(decide_vncfl(w, Proportions{1, 1, 1, 2.0 / 11.0 + 1e-12}).verdict, Verdict::accept);
  EXPECT_EQ(decide_vncfl(w, Proportions{1, 1, 1, 2.0 / 11.0 - 1e-12}).verdict, Verdict::reject);
}

TEST(Decide, GeneratorClosure) {
  Gen g(200);
  for (int t = 0; t < 200; ++t) {
    VSpec s = exact_spec(g);
    s.eps = g.real(0.0, 0.5);
    s.jitter = int(g.range(0, 2));
    if (s.jitter > 0) s.c1 = s.c2 = s.c3 = 1.0, s.eps = 0.9;
    const VString v = generate_vstring(s);
    ASSERT_EQ(decide_vncfl(v, s).verdict, Verdict::accept) << v.text();
  }
}

TEST(Decide, SingleDeletionsAreRejected) {
  Gen g(201);
  for (int t = 0; t < 60; ++t) {
    const VSpec s = exact_spec(g);
    const std::string text = generate_vstring(s).text();
    for (std::size_t pos = 0; pos < text.size(); ++pos) {
      std::string m = text;
      m.erase(pos, 1);
      ASSERT_EQ(decide_vncfl(VString(m), s).verdict, Verdict::reject) << m;
    }
  }
}

TEST(Decide, BadProportions) {
  EXPECT_THROW(decide_vncfl(VString("xxoocc"), Proportions{0, 1, 1, 0.2}), vfk::InvalidArgument);
  EXPECT_THROW(decide_vncfl(VString("xxoocc"), Proportions{1, 1, 1, 1.0}), vfk::InvalidArgument);
}

TEST(Spec, Validation) {
  VSpec s;
  s.i = 1;
  EXPECT_THROW(s.validate(), vfk::InvalidArgument);
  s = VSpec{};
  s.amplitude = 31;  // 2 * 32 = 64 is not < 64
  EXPECT_THROW(s.validate(), vfk::InvalidArgument);
  s.amplitude = 30;
  EXPECT_NO_THROW(s.validate());
}

TEST(Render, GeometryAndGroundTruth) {
  VSpec s = preset(Preset::habitual);
  const Kymogram k = render_kymogram(generate_vstring(s), s);
  EXPECT_EQ(k.image.width(), s.period() * s.periods);
  EXPECT_EQ(k.image.height(), 64);
  EXPECT_EQ(k.midline, 32);
  const std::string& text = k.source.text();
  for (int x = 0; x < k.image.width(); ++x) {
    const EdgePair e = k.ground_truth[std::size_t(x)];
    EXPECT_LE(e.upper, e.lower);
    EXPECT_EQ(k.midline - e.upper, e.lower - k.midline);
    EXPECT_LE(e.lower - k.midline, s.amplitude);
    if (text[std::size_t(x)] == kClosed) {
      EXPECT_EQ(e.upper, k.midline);
      EXPECT_EQ(e.lower, k.midline);
    }
    for (int y = 0; y < k.image.height(); ++y) {
      const bool edge = y == e.upper || y == e.lower;
      EXPECT_EQ(k.image.at(x, y), edge ? 200 : 0);
    }
  }
}

TEST(Render, RampReachesAmplitude) {
  VSpec s = plain(2, 5, 5, 1);
  s.c1 = 5, s.c2 = 2, s.c3 = 2;
  s.amplitude = 8;
  s.w_min = 1;
  const Kymogram k = render_kymogram(generate_vstring(s), s);
  // Columns: x x | o o o o o | c c c c c. Opening ramps 1 -> 8 over 5 samples.
  const std::vector<int> half{1, 1, 1, 3, 5, 6, 8, 8, 6, 5, 3, 1};
  for (std::size_t x = 0; x < half.size(); ++x) EXPECT_EQ(k.ground_truth[x].lower - k.midline, half[x]) << x;
}

TEST(Render, ColumnPeriodic) {
  for (const auto& [p, s] : preset_table()) {
    const Kymogram k = render_kymogram(generate_vstring(s), s);
    for (int x = s.period(); x < k.image.width(); ++x) {
      for (int y = 0; y < k.image.height(); ++y) ASSERT_EQ(k.image.at(x, y), k.image.at(x - s.period(), y));
    }
  }
}

TEST(Render, NoiseIsSeededAndBounded) {
  VSpec s = preset(Preset::high);
  s.noise = 20;
  s.seed = 5;
  const VString v = generate_vstring(s);
  const Kymogram a = render_kymogram(v, s), b = render_kymogram(v, s);
  EXPECT_EQ(a.image, b.image);
  EXPECT_EQ(a.ground_truth, render_kymogram(v, preset(Preset::high)).ground_truth);
  bool any = false;
  for (int y = 0; y < a.image.height(); ++y) {
    for (int x = 0; x < a.image.width(); ++x) {
      const int base = render_kymogram(v, preset(Preset::high)).image.at(x, y);
      EXPECT_GE(a.image.at(x, y), base);
      EXPECT_LE(a.image.at(x, y), std::min(255, base + 20));
      any = any || a.image.at(x, y) != base;
    }
    if (y > 2) break;
  }
  EXPECT_TRUE(any);
}

TEST(Render, RejectsInvalidStringsUnlessForced) {
  const VSpec s = plain(3, 3, 3, 1);
  EXPECT_THROW(render_kymogram(VString("xoc"), s), RenderError);
  EXPECT_NO_THROW(render_kymogram(VString("xoc"), s, true));
  EXPECT_THROW(render_kymogram(VString(""), s), RenderError);
}

TEST(Presets, QualitativeContracts) {
  EXPECT_LT(preset(Preset::high).period(), preset(Preset::habitual).period());
  EXPECT_GT(preset(Preset::breathy).w_min, 0.0);
  EXPECT_LT(preset(Preset::falsetto).amplitude, preset(Preset::habitual).amplitude);
  const VSpec h = preset(Preset::habitual);
  EXPECT_EQ(std::tie(h.i, h.j, h.k, h.amplitude), std::make_tuple(6, 8, 8, 12));
  for (const auto& [p, s] : preset_table()) {
    EXPECT_EQ(parse_preset(to_string(p)), p);
    EXPECT_NO_THROW(s.validate());
    EXPECT_EQ(proportion_deviation(s.c1, s.c2, s.c3, s.i, s.j, s.k), 0.0);
  }
  EXPECT_THROW(parse_preset("whisper"), vfk::InvalidArgument);
}

TEST(Midline, Estimation) {
  const VSpec s = preset(Preset::habitual);
  EXPECT_EQ(estimate_midline(render_kymogram(generate_vstring(s), s).image), 32);
  vfk::image::GrayImage tie(4, 5);
  tie.set(0, 1, 9);
  tie.set(0, 3, 9);
  EXPECT_EQ(estimate_midline(tie), 1);
  EXPECT_THROW(estimate_midline(vfk::image::GrayImage(4, 4, 255, std::vector<std::uint16_t>(16, 3))), NoSignalError);
}

TEST(Temporal, RecoversNoiseFreeEdgesExactly) {
  for (const auto& [p, s] : preset_table()) {
    const Kymogram k = render_kymogram(generate_vstring(s), s);
    vfk::snake::SnakeParams params;
    params.alpha = 0.001;
    params.gamma = 1.0;
    const TemporalSnakes t = temporal_snake_transform(k.image, params, k.midline, s.amplitude + 2);
    for (std::size_t x = 0; x < k.ground_truth.size(); ++x) {
      ASSERT_EQ(t.upper.snake.snaxels[x].y, k.ground_truth[x].upper) << to_string(p) << " column " << x;
      ASSERT_EQ(t.lower.snake.snaxels[x].y, k.ground_truth[x].lower) << to_string(p) << " column " << x;
    }
  }
}

TEST(Temporal, DefaultParamsRecoverNoiseFreeEdges) {
  const VSpec s = preset(Preset::habitual);
  const Kymogram k = render_kymogram(generate_vstring(s), s);
  const TemporalSnakes t = temporal_snake_transform(k.image, default_temporal_params(), k.midline, 16);
  for (std::size_t x = 0; x < k.ground_truth.size(); ++x) {
    EXPECT_EQ(t.upper.snake.snaxels[x].y, k.ground_truth[x].upper);
    EXPECT_EQ(t.lower.snake.snaxels[x].y, k.ground_truth[x].lower);
  }
}

TEST(Temporal, ZeroBandStaysOnMidline) {
  const VSpec s = preset(Preset::high);
  const Kymogram k = render_kymogram(generate_vstring(s), s);
  const TemporalSnakes t = temporal_snake_transform(k.image, default_temporal_params(), k.midline, 0);
  EXPECT_EQ(t.upper.snake, vfk::snake::horizontal_snake(k.image.width(), k.midline));
  EXPECT_EQ(t.lower.snake, t.upper.snake);
}

TEST(Temporal, BandMustFit) {
  const VSpec s = preset(Preset::high);
  const Kymogram k = render_kymogram(generate_vstring(s), s);
  EXPECT_THROW(temporal_snake_transform(k.image, default_temporal_params(), 32, 40), vfk::InvalidArgument);
  EXPECT_THROW(temporal_snake_transform(k.image, default_temporal_params(), 64, 1), vfk::InvalidArgument);
}

TEST(Remap, SingleAndReplicatedScanlines) {
  const VSpec s = preset(Preset::high);
  const Kymogram k = render_kymogram(generate_vstring(s), s);
  const TemporalSnakes t = temporal_snake_transform(k.image, default_temporal_params(), k.midline, 10);
  std::vector<ScanlineSnakes> one{{7, t.upper.snake, t.lower.snake}};
  EXPECT_EQ(remap_to_spatial(one, 3).left.size(), 1u);
  std::vector<ScanlineSnakes> stack;
  for (int row : {40, 10, 30, 20, 0}) stack.push_back({row, t.upper.snake, t.lower.snake});
  for (int frame = 0; frame < k.image.width(); ++frame) {
    const SpatialContours c = remap_to_spatial(stack, frame);
    ASSERT_EQ(c.left.size(), 5u);
    for (std::size_t r = 0; r < 5; ++r) {
      EXPECT_EQ(c.left[r].x, c.left[0].x);
      EXPECT_EQ(c.right[r].x, c.right[0].x);
      EXPECT_EQ(c.left[r].y, int(r) * 10);
    }
  }
  EXPECT_THROW(remap_to_spatial(stack, k.image.width()), vfk::InvalidArgument);
  stack[2].lower.snaxels.pop_back();
  EXPECT_THROW(remap_to_spatial(stack, 0), vfk::InvalidArgument);
}

TEST(Remap, IndependentKymogramsMatchTheirGroundTruth) {
  std::vector<ScanlineSnakes> stack;
  std::vector<Kymogram> ks;
  for (int r = 0; r < 5; ++r) {
    VSpec s = preset(Preset::habitual);
    s.amplitude = 6 + r;
    ks.push_back(render_kymogram(generate_vstring(s), s));
    const TemporalSnakes t = temporal_snake_transform(ks.back().image, default_temporal_params(), 32, 16);
    stack.push_back({r, t.upper.snake, t.lower.snake});
  }
  for (int frame : {0, 9, 50, 175}) {
    const SpatialContours c = remap_to_spatial(stack, frame);
    for (int r = 0; r < 5; ++r) {
      EXPECT_EQ(c.left[std::size_t(r)].x, ks[std::size_t(r)].ground_truth[std::size_t(frame)].upper);
      EXPECT_EQ(c.right[std::size_t(r)].x, ks[std::size_t(r)].ground_truth[std::size_t(frame)].lower);
    }
  }
}

}  // namespace
