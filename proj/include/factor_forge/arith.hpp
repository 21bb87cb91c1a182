#pragma once

#include <cstdint>

namespace factor_forge {

// Exact floor/ceil division for signed operands; `den` must be positive.
constexpr std::int64_t floor_div(std::int64_t num, std::int64_t den) {
  std::int64_t q = num / den;
  if ((num % den != 0) && (num < 0)) --q;
  return q;
}

constexpr std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
  std::int64_t q = num / den;
  if ((num % den != 0) && (num > 0)) ++q;
  return q;
}

/// Non-negative remainder.
constexpr std::int64_t mod_pos(std::int64_t value, std::int64_t m) {
  std::int64_t r = value % m;
  return r < 0 ? r + m : r;
}

/// A non-reduced fraction num/den with den > 0. Only comparisons against
/// integers are needed, so no normalisation is done.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr std::int64_t floor() const { return floor_div(num, den); }
  constexpr std::int64_t ceil() const { return ceil_div(num, den); }
  constexpr bool is_integer() const { return num % den == 0; }

  friend constexpr bool operator<(const Ratio& q, std::int64_t x) { return q.num < x * q.den; }
  friend constexpr bool operator<=(const Ratio& q, std::int64_t x) { return q.num <= x * q.den; }
  friend constexpr bool operator<(std::int64_t x, const Ratio& q) { return x * q.den < q.num; }
  friend constexpr bool operator<=(std::int64_t x, const Ratio& q) { return x * q.den <= q.num; }
  friend constexpr bool operator==(const Ratio& a, const Ratio& b) { return a.num * b.den == b.num * a.den; }
};

static_assert(floor_div(-1, 2) == -1);
static_assert(ceil_div(-1, 2) == 0);
static_assert(ceil_div(9, 1) == 9);
static_assert(ceil_div(7, 2) == 4);

}  // namespace factor_forge
