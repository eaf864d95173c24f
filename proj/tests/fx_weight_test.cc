#include <doctest.h>

#include <stdexcept>

#include "dpcut/fx_weight.h"

using namespace dpcut;

TEST_CASE("scale reserves gap and isolation bits for n nodes") {
  const WeightScale scale = WeightScale::for_nodes(5);
  CHECK(scale.fractional_bits == 0);
  CHECK(scale.gap_bits == 6);  // 2 * ceil(log2 5)
  CHECK(scale.iso_bits == 6);  // N = 50 needs 6 bits
  CHECK(WeightScale::isolation_range(5) == 50);
  CHECK(scale.supports(5));
  CHECK_FALSE(WeightScale::for_nodes(3).supports(5));

  // N = 2n^2 is a power of two for n = 4: the value N itself still fits.
  const WeightScale four = WeightScale::for_nodes(4);
  CHECK(WeightScale::isolation_range(4) == 32);
  CHECK(four.iso_bits == 6);
}

TEST_CASE("decimal formatting is exact") {
  const WeightScale scale{2, 3, 4};
  CHECK(FxWeight::from_integer(7, scale).to_decimal(scale) == "7");
  CHECK(parse_decimal_weight("2.75", scale).to_decimal(scale) == "2.75");
  // Floors to the fractional resolution.
  CHECK(parse_decimal_weight("2.7", scale).to_decimal(scale) == "2.5");
  CHECK(parse_decimal_weight(".25", scale).to_decimal(scale) == "0.25");
  // Isolation bit 1 is worth 2^-9.
  const FxWeight tiny = FxWeight::from_mantissa(1);
  CHECK(tiny.to_decimal(scale) == "0.001953125");
  CHECK(tiny.isolation_part(scale) == 1);
  CHECK((FxWeight::from_integer(3, scale) + tiny).coarse(scale) == FxWeight::from_integer(3, scale));
}

TEST_CASE("parse rejects malformed and negative input") {
  const WeightScale scale = WeightScale::for_nodes(4);
  CHECK_THROWS_AS(parse_decimal_weight("-1", scale), std::invalid_argument);
  CHECK_THROWS_AS(parse_decimal_weight("1e3", scale), std::invalid_argument);
  CHECK_THROWS_AS(parse_decimal_weight(".", scale), std::invalid_argument);
  CHECK_THROWS_AS(parse_decimal_weight("", scale), std::invalid_argument);
}

TEST_CASE("quantize truncates toward zero") {
  const WeightScale scale{3, 2, 2};
  CHECK(quantize(1.99, scale).to_decimal(scale) == "1.875");
  CHECK(quantize(0.0, scale).is_zero());
  CHECK(quantize(0.1, scale).is_zero());
  CHECK_THROWS_AS(quantize(-0.5, scale), std::invalid_argument);
}

TEST_CASE("arithmetic is checked") {
  const FxWeight max = FxWeight::from_mantissa(~Mantissa{0});
  CHECK_THROWS_AS(max + FxWeight::from_mantissa(1), std::overflow_error);
  CHECK_THROWS_AS(FxWeight::from_mantissa(1) - FxWeight::from_mantissa(2), std::domain_error);
  CHECK((FxWeight::from_mantissa(5) - FxWeight::from_mantissa(2)).mantissa() == 3);
}

TEST_CASE("to_string handles values above 64 bits") {
  CHECK(to_string(Mantissa{0}) == "0");
  CHECK(to_string(Mantissa{1} << 64) == "18446744073709551616");
}
