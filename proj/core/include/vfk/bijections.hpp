#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>

#include "vfk/errors.hpp"

namespace vfk::bijections {

// Exact arbitrary-precision natural. Negative values are rejected at every
// entry point that accepts one.
using Natural = boost::multiprecision::cpp_int;

Natural parse_natural(std::string_view decimal);  // throws InvalidArgument
std::string to_decimal(const Natural& n);

// floor(sqrt(n)) by integer Newton iteration.
Natural isqrt(const Natural& n);

// Shortlex ranking over an ordered alphabet: shorter strings first, equal
// lengths ordered by the alphabet's order. The alphabet order is the order
// symbols appear in `alphabet`.
Natural string_rank(std::u32string_view w, std::u32string_view alphabet);
std::u32string string_unrank(const Natural& rank, std::u32string_view alphabet);

// Cantor pairing (a+b)(a+b+1)/2 + b and its inverse.
Natural pair(const Natural& a, const Natural& b);
std::pair<Natural, Natural> unpair(const Natural& n);

// pair(a, pair(b, c)).
Natural triple(const Natural& a, const Natural& b, const Natural& c);
std::tuple<Natural, Natural, Natural> untriple(const Natural& n);

class NonReducedError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A non-negative rational in lowest terms. Zero is only ever 0/1.
class ReducedFraction {
 public:
  ReducedFraction(Natural numerator, Natural denominator);  // throws NonReducedError

  static ReducedFraction parse(std::string_view text);  // "m/n" or "m"

  const Natural& numerator() const { return num_; }
  const Natural& denominator() const { return den_; }
  std::string str() const;

  friend bool operator==(const ReducedFraction&, const ReducedFraction&) = default;

 private:
  Natural num_;
  Natural den_;
};

// Position of q in the pairing order over (numerator, denominator - 1),
// counting only reduced pairs.
Natural rational_rank(const ReducedFraction& q);
ReducedFraction rational_unrank(const Natural& n);

// Euler's totient by trial division.
Natural totient(const Natural& m);

}  // namespace vfk::bijections
