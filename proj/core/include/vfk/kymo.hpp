#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vfk/automata.hpp"
#include "vfk/errors.hpp"
#include "vfk/image.hpp"
#include "vfk/snake.hpp"

namespace vfk::kymo {

// Vibration alphabet.
inline constexpr char kOpening = 'o';  // folds opening / opened
inline constexpr char kClosing = 'c';  // folds closing
inline constexpr char kClosed = 'x';   // folds in contact

struct Run {
  char symbol;
  std::size_t length;
  std::size_t offset;  // index of the run's first symbol in the text
  friend bool operator==(const Run&, const Run&) = default;
};

class ForeignSymbolError : public InvalidArgument {
 public:
  ForeignSymbolError(char symbol, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Text over {o, c, x}; may be empty.
class VString {
 public:
  VString() = default;
  explicit VString(std::string text);  // throws ForeignSymbolError

  const std::string& text() const { return text_; }
  std::size_t size() const { return text_.size(); }
  bool empty() const { return text_.empty(); }
  std::vector<Run> runs() const;

  friend bool operator==(const VString&, const VString&) = default;

 private:
  std::string text_;
};

/// Generation, decision and rendering parameters.
///
/// (i, j, k) are the base run lengths of the closed, opening and closing
/// phases; c1*i ~ c2*j ~ c3*k must hold to within relative tolerance eps.
struct VSpec {
  int i = 6;
  int j = 8;
  int k = 8;
  double c1 = 1.0;
  double c2 = 1.0;
  double c3 = 1.0;
  double eps = 0.2;
  int periods = 8;
  int amplitude = 12;     // max glottal half-width, pixels
  double w_min = 0.0;     // residual half-width (incomplete closure)
  int jitter = 0;         // max +/- per-block run-length perturbation
  int noise = 0;          // additive uniform noise amplitude
  std::uint64_t seed = 0;
  int height = 64;
  int edge_intensity = 200;

  int period() const { return i + j + k; }

  void validate() const;  // throws InvalidArgument
  friend bool operator==(const VSpec&, const VSpec&) = default;
};

// Max relative deviation of {c1*i, c2*j, c3*k} from their mean.
double proportion_deviation(double c1, double c2, double c3, double i, double j, double k);

class UnsatisfiableSpec : public Error {
 public:
  using Error::Error;
};

// `periods` blocks of x^i' o^j' c^k'. Each block's lengths are the base
// lengths plus seeded uniform jitter, clamped to >= 2 and drawn uniformly
// among the offsets that keep the proportionality constraint.
VString generate_vstring(const VSpec& spec);

struct Violation {
  std::size_t run_index;
  std::size_t position;
  char symbol;
  std::size_t length;
  std::string reason;
};

struct Decision {
  automata::Verdict verdict;
  std::vector<Run> runs;
  std::optional<Violation> violation;
};

struct Proportions {
  double c1 = 1.0;
  double c2 = 1.0;
  double c3 = 1.0;
  double eps = 0.2;
};

// Accepts repetitions of one of the cyclic forms (o^j c^k x^i)*,
// (c^k x^i o^j)*, (x^i o^j c^k)*, each block checked on its own. Linear time.
Decision decide_vncfl(const VString& w, const Proportions& p);
Decision decide_vncfl(const VString& w, const VSpec& spec);

struct EdgePair {
  int upper;
  int lower;
  friend bool operator==(const EdgePair&, const EdgePair&) = default;
};

struct Kymogram {
  image::GrayImage image;
  std::vector<EdgePair> ground_truth;  // one per column, before noise
  VString source;
  int midline;
};

class RenderError : public Error {
 public:
  using Error::Error;
};

// One column per symbol; edges drawn at midline -/+ round(w(t)).
Kymogram render_kymogram(const VString& v, const VSpec& spec, bool force = false);

enum class Preset { habitual, high, breathy, falsetto };

Preset parse_preset(std::string_view name);  // throws InvalidArgument
std::string_view to_string(Preset p);
VSpec preset(Preset p);
std::vector<std::pair<Preset, VSpec>> preset_table();

class NoSignalError : public Error {
 public:
  using Error::Error;
};

// Row with the largest intensity variance across columns; ties to the smaller row.
int estimate_midline(const image::GrayImage& k);

// Where the external field comes from. Synthesized kymograms already encode a
// gradient magnitude per pixel, so their field is the squared intensity.
enum class FieldSource { intensity_is_gradient, gradient_of_intensity };

image::ScalarField external_field(const image::GrayImage& img, FieldSource source);

snake::SnakeParams default_temporal_params();

struct TemporalSnakes {
  snake::DeformResult upper;
  snake::DeformResult lower;
};

inline constexpr std::size_t kDefaultTemporalMaxIter = 100;

// Column-locked constraints keeping snaxel x inside rows [row_lo, row_hi] of column x.
snake::HardConstraints column_band_constraints(int width, int row_lo, int row_hi);

// Deforms a pair of column-locked snakes started on the midline: the upper
// confined to rows [midline - band_halfwidth, midline], the lower to
// [midline, midline + band_halfwidth].
TemporalSnakes temporal_snake_transform(const image::GrayImage& k, const snake::SnakeParams& params, int midline,
                                        int band_halfwidth,
                                        FieldSource source = FieldSource::intensity_is_gradient,
                                        std::size_t max_iter = kDefaultTemporalMaxIter);

struct ScanlineSnakes {
  int scanline_row;
  snake::Snake upper;
  snake::Snake lower;
};

struct SpatialContours {
  std::vector<image::Pixel> left;   // (x = upper edge position, y = scanline row)
  std::vector<image::Pixel> right;  // (x = lower edge position, y = scanline row)
};

// Frame t of a stack of per-scanline temporal snakes, ordered by scanline row.
SpatialContours remap_to_spatial(std::span<const ScanlineSnakes> scanlines, int t);

}  // namespace vfk::kymo
