#include "dpcut/fx_weight.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace dpcut {

namespace {

constexpr int kMaxShift = 112;
constexpr int kMaxFractionalBits = 19;
constexpr int kMaxDecimalFractionDigits = 19;

int ceil_log2(std::uint64_t x) {
  return x <= 1 ? 0 : static_cast<int>(std::bit_width(x - 1));
}

Mantissa low_mask(int bits) {
  return bits == 0 ? Mantissa{0} : (~Mantissa{0} >> (128 - bits));
}

} // namespace

std::uint64_t WeightScale::isolation_range(std::size_t n) {
  const auto nn = static_cast<std::uint64_t>(n);
  return 2 * nn * nn;
}

WeightScale WeightScale::for_nodes(std::size_t n, int fractional_bits) {
  if (fractional_bits < 0 || fractional_bits > kMaxFractionalBits) {
    throw std::invalid_argument("fractional bits must lie in [0, 19]");
  }
  WeightScale scale;
  scale.fractional_bits = fractional_bits;
  scale.gap_bits = 2 * ceil_log2(std::max<std::size_t>(n, 2));
  // N itself must fit: values are drawn from {1..N}, not {0..N-1}.
  scale.iso_bits = static_cast<int>(std::bit_width(isolation_range(std::max<std::size_t>(n, 1))));
  if (scale.shift() > kMaxShift) {
    throw std::invalid_argument("graph too large for 128-bit weight mantissas");
  }
  return scale;
}

bool WeightScale::supports(std::size_t n) const {
  return gap_bits >= 2 * ceil_log2(std::max<std::size_t>(n, 2)) &&
         iso_bits >= static_cast<int>(std::bit_width(isolation_range(n)));
}

FxWeight FxWeight::from_integer(std::uint64_t value, const WeightScale &scale) {
  return from_mantissa(Mantissa{value} << scale.shift());
}

FxWeight &FxWeight::operator+=(FxWeight other) {
  const Mantissa sum = mantissa_ + other.mantissa_;
  if (sum < mantissa_) {
    throw std::overflow_error("FxWeight accumulation overflow");
  }
  mantissa_ = sum;
  return *this;
}

FxWeight &FxWeight::operator-=(FxWeight other) {
  if (other.mantissa_ > mantissa_) {
    throw std::domain_error("FxWeight subtraction would be negative");
  }
  mantissa_ -= other.mantissa_;
  return *this;
}

FxWeight FxWeight::coarse(const WeightScale &scale) const {
  return from_mantissa(mantissa_ & ~low_mask(scale.tie_bits()));
}

std::uint64_t FxWeight::isolation_part(const WeightScale &scale) const {
  return static_cast<std::uint64_t>(mantissa_ & low_mask(scale.iso_bits));
}

long double FxWeight::to_real(const WeightScale &scale) const {
  const auto hi = static_cast<std::uint64_t>(mantissa_ >> 64);
  const auto lo = static_cast<std::uint64_t>(mantissa_);
  const long double value = std::ldexp(static_cast<long double>(hi), 64) + static_cast<long double>(lo);
  return std::ldexp(value, -scale.shift());
}

std::string FxWeight::to_decimal(const WeightScale &scale) const {
  const int shift = scale.shift();
  std::string out = to_string(mantissa_ >> shift);
  Mantissa frac = mantissa_ & low_mask(shift);
  if (frac == 0) {
    return out;
  }
  out.push_back('.');
  // shift <= 112, so frac * 10 < 2^116 never overflows.
  while (frac != 0) {
    frac *= 10;
    out.push_back(static_cast<char>('0' + static_cast<int>(frac >> shift)));
    frac &= low_mask(shift);
  }
  return out;
}

std::string to_string(Mantissa value) {
  if (value == 0) {
    return "0";
  }
  std::string digits;
  while (value != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

FxWeight parse_decimal_weight(std::string_view text, const WeightScale &scale) {
  if (text.empty()) {
    throw std::invalid_argument("empty weight");
  }
  if (text.front() == '-') {
    throw std::invalid_argument("negative weight");
  }
  if (text.front() == '+') {
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  const std::string_view int_part = text.substr(0, dot);
  const std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) {
    throw std::invalid_argument("malformed weight '" + std::string(text) + "'");
  }

  Mantissa integer = 0;
  for (char c : int_part) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("malformed weight '" + std::string(text) + "'");
    }
    integer = integer * 10 + static_cast<unsigned>(c - '0');
    if (integer >> 64 != 0) {
      throw std::invalid_argument("weight too large");
    }
  }

  // Digits past the 19th cannot move floor(x * 2^t) for t <= 19.
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;
  int kept = 0;
  for (char c : frac_part) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("malformed weight '" + std::string(text) + "'");
    }
    if (kept < kMaxDecimalFractionDigits) {
      numerator = numerator * 10 + static_cast<unsigned>(c - '0');
      denominator *= 10;
      ++kept;
    }
  }

  const int t = scale.fractional_bits;
  const Mantissa coarse = (integer << t) + ((Mantissa{numerator} << t) / denominator);
  if (scale.tie_bits() != 0 && coarse >> (128 - scale.tie_bits()) != 0) {
    throw std::invalid_argument("weight too large");
  }
  return FxWeight::from_mantissa(coarse << scale.tie_bits());
}

FxWeight quantize(long double value, const WeightScale &scale) {
  if (!std::isfinite(value) || value < 0) {
    throw std::invalid_argument("quantize expects a finite nonnegative value");
  }
  const long double scaled = std::floor(std::ldexp(value, scale.fractional_bits));
  if (scaled >= std::ldexp(1.0L, 126 - scale.shift())) {
    throw std::overflow_error("value too large to quantize");
  }
  const auto hi = static_cast<std::uint64_t>(std::floor(std::ldexp(scaled, -64)));
  const auto lo = static_cast<std::uint64_t>(scaled - std::ldexp(static_cast<long double>(hi), 64));
  const Mantissa coarse = (Mantissa{hi} << 64) | lo;
  return FxWeight::from_mantissa(coarse << scale.tie_bits());
}

} // namespace dpcut
