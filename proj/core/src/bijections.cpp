#include "vfk/bijections.hpp"

#include <algorithm>
#include <vector>

namespace vfk::bijections {

namespace {

void require_natural(const Natural& n, std::string_view what) {
  if (n < 0) throw InvalidArgument(std::string(what) + " must be a natural number");
}

Natural gcd(Natural a, Natural b) {
  while (b != 0) {
    Natural t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

std::size_t symbol_index(char32_t s, std::u32string_view alphabet, std::size_t pos) {
  auto it = std::find(alphabet.begin(), alphabet.end(), s);
  if (it == alphabet.end()) {
    throw InvalidArgument("symbol at position " + std::to_string(pos) + " is not in the alphabet");
  }
  return static_cast<std::size_t>(it - alphabet.begin());
}

void validate_alphabet(std::u32string_view alphabet) {
  if (alphabet.empty()) throw InvalidArgument("alphabet must have at least one symbol");
  std::u32string sorted(alphabet);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("alphabet has duplicate symbols");
  }
}

}  // namespace

Natural parse_natural(std::string_view decimal) {
  if (decimal.empty() || !std::all_of(decimal.begin(), decimal.end(),
                                      [](char c) { return c >= '0' && c <= '9'; })) {
    throw InvalidArgument("expected a natural number, got '" + std::string(decimal) + "'");
  }
  return Natural(std::string(decimal));
}

std::string to_decimal(const Natural& n) { return n.str(); }

Natural isqrt(const Natural& n) {
  require_natural(n, "isqrt argument");
  if (n < 2) return n;
  // Start above the root; Newton's iterates decrease monotonically to floor(sqrt(n)).
  Natural x = Natural(1) << ((msb(n) / 2) + 1);
  while (true) {
    Natural y = (x + n / x) >> 1;
    if (y >= x) return x;
    x = std::move(y);
  }
}

Natural string_rank(std::u32string_view w, std::u32string_view alphabet) {
  validate_alphabet(alphabet);
  const Natural k = alphabet.size();
  // Bijective base-k numeral with digits 1..k.
  Natural r = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    r = r * k + (symbol_index(w[i], alphabet, i) + 1);
  }
  return r;
}

std::u32string string_unrank(const Natural& rank, std::u32string_view alphabet) {
  validate_alphabet(alphabet);
  require_natural(rank, "rank");
  const Natural k = alphabet.size();
  std::u32string out;
  Natural r = rank;
  while (r > 0) {
    r -= 1;
    out.push_back(alphabet[static_cast<std::size_t>(r % k)]);
    r /= k;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Natural pair(const Natural& a, const Natural& b) {
  require_natural(a, "a");
  require_natural(b, "b");
  const Natural s = a + b;
  return s * (s + 1) / 2 + b;
}

std::pair<Natural, Natural> unpair(const Natural& n) {
  require_natural(n, "n");
  // Diagonal index w = largest w with w(w+1)/2 <= n.
  const Natural w = (isqrt(8 * n + 1) - 1) / 2;
  const Natural t = w * (w + 1) / 2;
  Natural b = n - t;
  Natural a = w - b;
  return {std::move(a), std::move(b)};
}

Natural triple(const Natural& a, const Natural& b, const Natural& c) { return pair(a, pair(b, c)); }

std::tuple<Natural, Natural, Natural> untriple(const Natural& n) {
  auto [a, bc] = unpair(n);
  auto [b, c] = unpair(bc);
  return {std::move(a), std::move(b), std::move(c)};
}

ReducedFraction::ReducedFraction(Natural numerator, Natural denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  require_natural(num_, "numerator");
  if (den_ <= 0) throw NonReducedError("denominator must be positive");
  if (gcd(num_, den_) != 1) {
    throw NonReducedError(num_.str() + "/" + den_.str() + " is not in lowest terms");
  }
}

ReducedFraction ReducedFraction::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return {parse_natural(text), 1};
  return {parse_natural(text.substr(0, slash)), parse_natural(text.substr(slash + 1))};
}

std::string ReducedFraction::str() const { return num_.str() + "/" + den_.str(); }

Natural totient(const Natural& m) {
  if (m < 1) throw InvalidArgument("totient is defined for m >= 1");
  Natural result = m;
  Natural rest = m;
  for (Natural p = 2; p * p <= rest; ++p) {
    if (rest % p == 0) {
      while (rest % p == 0) rest /= p;
      result -= result / p;
    }
  }
  if (rest > 1) result -= result / rest;
  return result;
}

// Diagonal d holds the pairs (p, q-1) with p + q - 1 = d, q = 1..d+1, and
// gcd(p, q) = gcd(d + 1 - q, q) = gcd(d + 1, q). So diagonal d contributes
// totient(d + 1) reduced fractions, ordered by increasing denominator q.
Natural rational_rank(const ReducedFraction& q) {
  const Natural d = q.numerator() + q.denominator() - 1;
  Natural rank = 0;
  for (Natural m = 1; m <= d; ++m) rank += totient(m);
  for (Natural den = 1; den < q.denominator(); ++den) {
    if (gcd(d + 1, den) == 1) ++rank;
  }
  return rank;
}

ReducedFraction rational_unrank(const Natural& n) {
  require_natural(n, "n");
  Natural remaining = n;
  Natural d = 0;
  while (true) {
    Natural count = totient(d + 1);
    if (remaining < count) break;
    remaining -= count;
    ++d;
  }
  for (Natural den = 1;; ++den) {
    if (gcd(d + 1, den) == 1) {
      if (remaining == 0) return {d + 1 - den, den};
      --remaining;
    }
  }
}

}  // namespace vfk::bijections
