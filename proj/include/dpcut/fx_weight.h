#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace dpcut {

using Mantissa = unsigned __int128;

/// Bit layout of every weight mantissa, most significant part first:
///
///   [ integer | fractional_bits | gap_bits | iso_bits ]
///
/// Input weights keep the gap and iso bits zero. Randomized edges write a
/// value in {1..N}, N = 2n^2, into the iso bits. The gap bits are wide enough
/// that the iso contributions of all edges of any cut sum to less than one
/// unit of the fractional resolution, so tie-breaking never reorders two cuts
/// whose coarse weights differ.
struct WeightScale {
  int fractional_bits = 0;
  int gap_bits = 0;
  int iso_bits = 0;

  /// Scale large enough for graphs with up to `n` nodes.
  static WeightScale for_nodes(std::size_t n, int fractional_bits = 0);

  /// N = 2n^2, the range of isolation values for an n-node graph.
  static std::uint64_t isolation_range(std::size_t n);

  [[nodiscard]] int tie_bits() const { return gap_bits + iso_bits; }
  [[nodiscard]] int shift() const { return fractional_bits + tie_bits(); }

  /// True if this scale has room for the isolation scheme on an n-node graph.
  [[nodiscard]] bool supports(std::size_t n) const;

  bool operator==(const WeightScale &) const = default;
};

/// Nonnegative fixed-point weight. All arithmetic is exact on the mantissa;
/// the interpretation as a real number needs the owning graph's WeightScale.
class FxWeight {
public:
  constexpr FxWeight() = default;

  static constexpr FxWeight from_mantissa(Mantissa m) {
    FxWeight w;
    w.mantissa_ = m;
    return w;
  }

  /// Integral weight `value` with all fractional and tie bits zero.
  static FxWeight from_integer(std::uint64_t value, const WeightScale &scale);

  [[nodiscard]] constexpr Mantissa mantissa() const { return mantissa_; }
  [[nodiscard]] constexpr bool is_zero() const { return mantissa_ == 0; }

  /// Throws std::overflow_error if the sum does not fit.
  FxWeight &operator+=(FxWeight other);
  /// Throws std::domain_error if the result would be negative.
  FxWeight &operator-=(FxWeight other);

  friend FxWeight operator+(FxWeight a, FxWeight b) { return a += b; }
  friend FxWeight operator-(FxWeight a, FxWeight b) { return a -= b; }

  constexpr auto operator<=>(const FxWeight &) const = default;

  /// Drops the gap and iso bits.
  [[nodiscard]] FxWeight coarse(const WeightScale &scale) const;
  /// The isolation value stored in the iso bits.
  [[nodiscard]] std::uint64_t isolation_part(const WeightScale &scale) const;

  [[nodiscard]] long double to_real(const WeightScale &scale) const;
  /// Exact decimal expansion of mantissa / 2^shift.
  [[nodiscard]] std::string to_decimal(const WeightScale &scale) const;

private:
  Mantissa mantissa_ = 0;
};

/// Parses a plain nonnegative decimal ("12", "3.25", ".5") and floors it to
/// the scale's fractional resolution. Throws std::invalid_argument.
FxWeight parse_decimal_weight(std::string_view text, const WeightScale &scale);

/// Truncates a nonnegative real to the fractional resolution, tie bits zero.
/// Throws std::invalid_argument for negative or non-finite input.
FxWeight quantize(long double value, const WeightScale &scale);

std::string to_string(Mantissa value);

} // namespace dpcut
