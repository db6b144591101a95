#include <cctype>
#include <fstream>
#include <sstream>

#include "vfk/image.hpp"

namespace vfk::image {

namespace {

constexpr std::string_view kCommentTag = "# vfk";

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::uint64_t number(const char* what) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      throw PgmError(std::string("expected ") + what + " in PGM header");
    }
    std::uint64_t v = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      v = v * 10 + std::uint64_t(bytes_[pos_] - '0');
      if (v > 0xFFFFFFFFull) throw PgmError(std::string(what) + " too large");
      ++pos_;
    }
    return v;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage load_pgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw PgmError("bad magic: expected P2 or P5");
  }
  const bool binary = bytes[1] == '5';
  HeaderReader reader(bytes);
  reader.advance(2);
  const auto width = reader.number("width");
  const auto height = reader.number("height");
  const auto maxval = reader.number("maxval");
  if (width == 0 || height == 0) throw PgmError("image dimensions must be positive");
  if (maxval == 0 || maxval > 65535) throw PgmError("maxval must be in [1, 65535], got " + std::to_string(maxval));
  if (width * height > (1ull << 31)) throw PgmError("image too large");
  const std::size_t count = std::size_t(width * height);

  std::vector<std::uint16_t> pixels;
  pixels.reserve(count);
  if (binary) {
    std::size_t pos = reader.pos();
    if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
      throw PgmError("expected a single whitespace byte after maxval");
    }
    ++pos;
    const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
    const std::size_t expected = count * bytes_per_sample;
    const std::size_t actual = bytes.size() - pos;
    if (actual < expected) {
      throw PgmError("truncated P5 payload: expected " + std::to_string(expected) + " bytes, got " +
                     std::to_string(actual));
    }
    for (std::size_t i = 0; i < count; ++i) {
      std::uint32_t v;
      if (bytes_per_sample == 1) {
        v = static_cast<unsigned char>(bytes[pos + i]);
      } else {
        v = (std::uint32_t(static_cast<unsigned char>(bytes[pos + 2 * i])) << 8) |
            static_cast<unsigned char>(bytes[pos + 2 * i + 1]);
      }
      if (v > maxval) throw PgmError("sample " + std::to_string(i) + " exceeds maxval");
      pixels.push_back(static_cast<std::uint16_t>(v));
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      std::uint64_t v;
      try {
        v = reader.number("sample");
      } catch (const PgmError&) {
        throw PgmError("truncated P2 payload: expected " + std::to_string(count) + " samples, got " +
                       std::to_string(i));
      }
      if (v > maxval) throw PgmError("sample " + std::to_string(i) + " exceeds maxval");
      pixels.push_back(static_cast<std::uint16_t>(v));
    }
  }
  return GrayImage(int(width), int(height), std::uint32_t(maxval), std::move(pixels));
}

std::string save_pgm(const GrayImage& img, bool binary) {
  std::string out;
  out += binary ? "P5\n" : "P2\n";
  out += kCommentTag;
  out += '\n';
  out += std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n";
  out += std::to_string(img.maxval()) + "\n";
  const auto px = img.pixels();
  if (binary) {
    const bool wide = img.maxval() > 255;
    out.reserve(out.size() + px.size() * (wide ? 2 : 1));
    for (auto v : px) {
      if (wide) out.push_back(static_cast<char>(v >> 8));
      out.push_back(static_cast<char>(v & 0xFF));
    }
  } else {
    // Plain PGM lines stay within 70 characters; each image row starts a new line.
    for (int y = 0; y < img.height(); ++y) {
      std::size_t line_len = 0;
      for (int x = 0; x < img.width(); ++x) {
        const std::string s = std::to_string(img.at(x, y));
        if (line_len > 0 && line_len + 1 + s.size() > 70) {
          out += '\n';
          line_len = 0;
        } else if (line_len > 0) {
          out += ' ';
          ++line_len;
        }
        out += s;
        line_len += s.size();
      }
      out += '\n';
    }
  }
  return out;
}

GrayImage read_pgm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PgmError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_pgm(ss.str());
}

void write_pgm_file(const std::string& path, const GrayImage& img, bool binary) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PgmError("cannot write " + path);
  const std::string bytes = save_pgm(img, binary);
  out.write(bytes.data(), std::streamsize(bytes.size()));
  if (!out) throw PgmError("write failed for " + path);
}

}  // namespace vfk::image
