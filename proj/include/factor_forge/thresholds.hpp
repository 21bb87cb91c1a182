#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "factor_forge/arith.hpp"
#include "factor_forge/error.hpp"

namespace factor_forge {

/// Parity class of (r, a): first letter is r, second is a (OE = r odd, a even).
enum class Parity { EE, OE, EO, OO };

constexpr const char* to_string(Parity p) {
  switch (p) {
    case Parity::EE: return "EE";
    case Parity::OE: return "OE";
    case Parity::EO: return "EO";
    case Parity::OO: return "OO";
  }
  return "?";
}

constexpr Parity parity_of(std::int64_t r, std::int64_t a) {
  bool r_even = r % 2 == 0;
  bool a_even = a % 2 == 0;
  if (r_even) return a_even ? Parity::EE : Parity::EO;
  return a_even ? Parity::OE : Parity::OO;
}

/// Arguments of the threshold numbers, always in the order (r, s, a, t).
struct ThresholdParams {
  std::int64_t r = 1;
  std::int64_t s = 0;
  std::int64_t a = 1;
  std::int64_t t = 1;

  constexpr Parity parity() const { return parity_of(r, a); }
  friend constexpr bool operator==(const ThresholdParams&, const ThresholdParams&) = default;
};

inline std::string to_string(const ThresholdParams& p) {
  return "(" + std::to_string(p.r) + "," + std::to_string(p.s) + "," + std::to_string(p.a) + "," +
         std::to_string(p.t) + ")";
}

namespace detail {

inline void require_threshold_domain(const ThresholdParams& p, const char* what) {
  if (p.r < 1 || p.t < 1) throw Error(ErrorKind::OutOfScope, std::string(what) + " needs r >= 1 and t >= 1");
  if (p.s < 0 || p.a < 0) throw Error(ErrorKind::InvalidParams, std::string(what) + " needs s >= 0 and a >= 0");
}

/// r * ceil(num / a) + (t-1) r, the shape shared by every closed form.
constexpr std::int64_t ceil_form(std::int64_t r, std::int64_t num, std::int64_t a, std::int64_t t) {
  return r * ceil_div(num, a) + (t - 1) * r;
}

}  // namespace detail

/// N(r,s,a,t) = r * ceil((rt+s-1)/a) + (t-1) r.
inline std::int64_t big_n(const ThresholdParams& p) {
  detail::require_threshold_domain(p, "N");
  if (p.a == 0) throw Error(ErrorKind::DivisionByZero, "N(r,s,a,t) is undefined for a = 0");
  return detail::ceil_form(p.r, p.r * p.t + p.s - 1, p.a, p.t);
}

/// Bipartite threshold; equal to N.
inline std::int64_t beta(const ThresholdParams& p) { return big_n(p); }

/// Simple-graph threshold number, four parity cases. Case (iv) is read as
/// r*ceil((tr+s)/a) + (t-1)r + 1.
inline std::int64_t sigma(const ThresholdParams& p) {
  detail::require_threshold_domain(p, "sigma");
  if (p.a == 0) throw Error(ErrorKind::OutOfScope, "sigma closed form needs a >= 1");
  const auto [r, s, a, t] = p;
  switch (p.parity()) {
    case Parity::OE:
      if (t == 1 && a >= r + s + 1) return r;
      return detail::ceil_form(r, t * r + s + 1, a, t) + 1;
    case Parity::EE:
      return detail::ceil_form(r, t * r + s - 1, a, t);
    case Parity::EO:
      return detail::ceil_form(r, t * r + s, a, t);
    case Parity::OO:
      if (t == 1 && a >= r + s) return r;
      return detail::ceil_form(r, t * r + s, a, t) + 1;
  }
  return 0;
}

/// The earlier a = 1 evaluation. Returns nullopt when a != 1.
inline std::optional<std::int64_t> sigma_a1_formula(const ThresholdParams& p) {
  detail::require_threshold_domain(p, "sigma_a1_formula");
  if (p.a != 1) return std::nullopt;
  const auto [r, s, a, t] = p;
  const std::int64_t base = t * r * r + t * r + s * r;
  if (s >= 2) return base + 1;
  return r % 2 == 0 ? base - r : base - r + 1;
}

/// sigma(r,0,1,1) for r >= 3: r^2 (even r) or r^2 + 1 (odd r). nullopt outside
/// that domain.
inline std::optional<std::int64_t> sigma_regular_formula(const ThresholdParams& p) {
  if (p.r < 3 || p.s != 0 || p.a != 1 || p.t != 1) return std::nullopt;
  return p.r % 2 == 0 ? p.r * p.r : p.r * p.r + 1;
}

/// r*ceil((tr+s+1)/a) + (t-1)r + 1 evaluated for any a >= 1. It is only a
/// proven bound for a >= 2; see sigma_bounds.
inline std::int64_t sigma_upper_formula(const ThresholdParams& p) {
  detail::require_threshold_domain(p, "sigma_upper_formula");
  if (p.a == 0) throw Error(ErrorKind::DivisionByZero, "upper bound formula is undefined for a = 0");
  return detail::ceil_form(p.r, p.t * p.r + p.s + 1, p.a, p.t) + 1;
}

/// (N, sigma_upper_formula) under the a >= 2 hypothesis of the bound.
inline std::pair<std::int64_t, std::int64_t> sigma_bounds(const ThresholdParams& p) {
  detail::require_threshold_domain(p, "sigma_bounds");
  if (p.a < 2) throw Error(ErrorKind::OutOfScope, "upper bound needs a >= 2");
  return {big_n(p), sigma_upper_formula(p)};
}

// ---------------------------------------------------------------------------
// Feasible factor counts.

/// Integers x admissible for (d, d+s)-graphs and (r, r+a)-factors: the interval
/// between (d+s)/(r+a) and d/r with endpoint openness fixed by parity.
struct FeasibleSet {
  Ratio lower;
  Ratio upper;
  bool lower_open = false;
  bool upper_open = false;
  std::vector<std::int64_t> members;
  bool side_condition_met = true;

  bool contains(std::int64_t x) const { return std::binary_search(members.begin(), members.end(), x); }
  std::size_t size() const { return members.size(); }
};

namespace detail {

struct FeasibleShape {
  Ratio lower;
  Ratio upper;
  bool lower_open;
  bool upper_open;
  bool side_condition_met;
  std::int64_t first;  // smallest admissible integer in the interval
  std::int64_t last;   // largest; first > last when empty
  bool add_single_factor;
};

inline FeasibleShape feasible_shape(std::int64_t d, std::int64_t s, std::int64_t r, std::int64_t a) {
  if (r < 1) throw Error(ErrorKind::OutOfScope, "feasible_x_set needs r >= 1");
  if (d < 1) throw Error(ErrorKind::OutOfScope, "feasible_x_set needs d >= 1");
  if (s < 0 || a < 0) throw Error(ErrorKind::InvalidParams, "feasible_x_set needs s, a >= 0");
  FeasibleShape f{};
  f.lower = {d + s, r + a};
  f.upper = {d, r};
  switch (parity_of(r, a)) {
    case Parity::EE:
      f.lower_open = false, f.upper_open = false, f.side_condition_met = true;
      break;
    case Parity::OE:
      f.lower_open = true, f.upper_open = true, f.side_condition_met = d > std::max(r, r + s - a);
      break;
    case Parity::EO:
      f.lower_open = true, f.upper_open = false, f.side_condition_met = d > r + a - s;
      break;
    case Parity::OO:
      f.lower_open = false, f.upper_open = true, f.side_condition_met = d > r;
      break;
  }
  f.first = f.lower_open ? f.lower.floor() + 1 : f.lower.ceil();
  f.last = f.upper_open ? f.upper.ceil() - 1 : f.upper.floor();
  f.first = std::max<std::int64_t>(f.first, 1);
  f.add_single_factor = !f.side_condition_met && r <= d && d + s <= r + a;
  return f;
}

inline std::int64_t feasible_count(const FeasibleShape& f) {
  std::int64_t n = f.last >= f.first ? f.last - f.first + 1 : 0;
  bool one_inside = f.first <= 1 && 1 <= f.last;
  if (f.add_single_factor && !one_inside) ++n;
  return n;
}

}  // namespace detail

/// When the parity case's side condition on d fails, the interval is still
/// reported and x = 1 is added whenever the graph itself is an (r, r+a)-factor
/// (r <= d and d+s <= r+a); side_condition_met is then false.
inline FeasibleSet feasible_x_set(std::int64_t d, std::int64_t s, std::int64_t r, std::int64_t a) {
  const auto shape = detail::feasible_shape(d, s, r, a);
  FeasibleSet out;
  out.lower = shape.lower;
  out.upper = shape.upper;
  out.lower_open = shape.lower_open;
  out.upper_open = shape.upper_open;
  out.side_condition_met = shape.side_condition_met;
  if (shape.add_single_factor && !(shape.first <= 1 && 1 <= shape.last)) out.members.push_back(1);
  for (std::int64_t x = shape.first; x <= shape.last; ++x) out.members.push_back(x);
  return out;
}

/// Least d0 such that every d in [d0, d_cap] admits at least t factor counts,
/// found by scanning down from d_cap. d_cap must leave headroom above the
/// true threshold (sigma + r + a is enough on every case checked).
inline std::int64_t sigma_by_search(const ThresholdParams& p, std::int64_t d_cap) {
  detail::require_threshold_domain(p, "sigma_by_search");
  if (d_cap < 1) throw Error(ErrorKind::InvalidParams, "d_cap must be >= 1");
  auto count_at = [&](std::int64_t d) { return detail::feasible_count(detail::feasible_shape(d, p.s, p.r, p.a)); };
  if (count_at(d_cap) < p.t)
    throw Error(ErrorKind::SearchExhausted,
                "fewer than t feasible counts at d_cap = " + std::to_string(d_cap) + " for " + to_string(p));
  std::int64_t d = d_cap;
  while (d > 1 && count_at(d - 1) >= p.t) --d;
  return d;
}

// ---------------------------------------------------------------------------
// Pseudograph and multigraph thresholds (reference values only).

struct PiValue {
  enum class Kind { Finite, Infinite, Undetermined };
  Kind kind = Kind::Finite;
  std::int64_t value = 0;
  bool conjectured = false;

  bool finite() const { return kind == Kind::Finite; }
  static PiValue infinite(bool conjectured = false) { return {Kind::Infinite, 0, conjectured}; }
  static PiValue of(std::int64_t v, bool conjectured = false) { return {Kind::Finite, v, conjectured}; }
  static PiValue undetermined() { return {Kind::Undetermined, 0, true}; }
};

inline PiValue pi(const ThresholdParams& p) {
  detail::require_threshold_domain(p, "pi");
  const auto [r, s, a, t] = p;
  if (a == 0) return PiValue::infinite();
  if (a == 1) {
    if (r == 2 && s == 0 && t == 1) return PiValue::of(2);
    if (r == 1 && s == 0 && t == 1) return PiValue::of(1);
    return PiValue::infinite();
  }
  if (a == 2 && r % 2 == 1) {
    // Announced for a sequel; only the two displayed branches exist.
    if (s > 1 || t > 1) return PiValue::infinite(true);
    if (r == 1) return PiValue::of(1, true);
    return PiValue::undetermined();
  }
  switch (p.parity()) {
    case Parity::EE:
      return PiValue::of(big_n(p));
    case Parity::OO: {
      const std::int64_t n = big_n({r + 1, s, a - 1, t});
      const bool special = mod_pos((r + 1) * t + s, a - 1) == mod_pos(2, a - 1);
      return PiValue::of(special ? n - (r + 1) - 1 : n - 1);
    }
    case Parity::OE: {
      const std::int64_t m = a - 2;
      const std::int64_t n = big_n({r + 1, s, m, t});
      const std::int64_t res = mod_pos((r + 1) * t + s, m);
      const bool special = res == mod_pos(2, m) || res == mod_pos(3, m);
      return PiValue::of(special ? n - (r + 1) - 1 : n - 1, true);
    }
    case Parity::EO: {
      const std::int64_t n = big_n({r, s, a - 1, t});
      const bool special = mod_pos(r * t + s, a - 1) == mod_pos(2, a - 1);
      return PiValue::of(special ? n - r : n);
    }
  }
  return PiValue::undetermined();
}

/// Bounds on mu(r, 0, 1, 1): exact for odd r, an interval for even r.
inline std::pair<std::int64_t, std::int64_t> mu_bounds(std::int64_t r) {
  if (r < 1) throw Error(ErrorKind::OutOfScope, "mu_bounds needs r >= 1");
  if (r % 2 == 1) return {r * r + 1, r * r + 1};
  return {3 * r * r / 2 - 2 * r - 1, 3 * r * r / 2 + 3 * r + 1};
}

// ---------------------------------------------------------------------------
// Cross-check of every applicable formula.

struct FormulaValue {
  enum class Kind { Integer, Infinity, Bounds, Undetermined };
  std::string name;
  Kind kind = Kind::Integer;
  std::int64_t value = 0;
  std::int64_t lower = 0;
  std::int64_t upper = 0;
  std::string note;
};

struct Relation {
  enum class Kind { Equal, AtMost };
  std::string left;
  std::string right;
  Kind kind = Kind::Equal;
  std::int64_t difference = 0;  // left - right
};

struct CrossCheckReport {
  ThresholdParams params;
  std::vector<FormulaValue> values;
  std::vector<Relation> agreements;
  std::vector<Relation> discrepancies;

  const FormulaValue* find(const std::string& name) const {
    for (const auto& v : values)
      if (v.name == name) return &v;
    return nullptr;
  }

  const Relation* discrepancy(const std::string& left, const std::string& right) const {
    for (const auto& d : discrepancies)
      if ((d.left == left && d.right == right) || (d.left == right && d.right == left)) return &d;
    return nullptr;
  }
};

/// Names used in CrossCheckReport::values.
namespace formula {
inline constexpr const char* kBigN = "N";
inline constexpr const char* kBeta = "beta";
inline constexpr const char* kSigma = "sigma_parity";
inline constexpr const char* kSigmaA1 = "sigma_a1";
inline constexpr const char* kSigmaRegular = "sigma_regular";
inline constexpr const char* kSigmaEven = "sigma_even";
inline constexpr const char* kSigmaSearch = "sigma_search";
inline constexpr const char* kSigmaBounds = "sigma_bounds";
inline constexpr const char* kPi = "pi";
inline constexpr const char* kMu = "mu";
inline constexpr const char* kMuBounds = "mu_bounds";
}  // namespace formula

/// Search cap used by crosscheck: the largest closed-form candidate plus
/// 3(r+a) of headroom.
inline std::int64_t default_search_cap(const ThresholdParams& p) {
  std::int64_t top = sigma(p);
  if (auto v = sigma_a1_formula(p)) top = std::max(top, *v);
  top = std::max(top, sigma_upper_formula(p));
  return top + 3 * (p.r + p.a);
}

/// Evaluates every formula that applies to p and records pairwise equalities
/// between the sigma candidates and the ordering chain
/// N <= sigma <= mu <= pi plus the sigma bracket. Nothing is reconciled.
inline CrossCheckReport crosscheck(const ThresholdParams& p) {
  detail::require_threshold_domain(p, "crosscheck");
  if (p.a < 1) throw Error(ErrorKind::OutOfScope, "crosscheck needs a >= 1");
  using K = FormulaValue::Kind;
  CrossCheckReport rep;
  rep.params = p;
  auto integer = [&](const char* name, std::int64_t v, std::string note = {}) {
    rep.values.push_back({name, K::Integer, v, 0, 0, std::move(note)});
  };

  integer(formula::kBigN, big_n(p));
  integer(formula::kBeta, beta(p));
  integer(formula::kSigma, sigma(p));
  if (auto v = sigma_a1_formula(p)) integer(formula::kSigmaA1, *v);
  if (auto v = sigma_regular_formula(p)) integer(formula::kSigmaRegular, *v);
  if (p.parity() == Parity::EE) integer(formula::kSigmaEven, big_n(p));
  integer(formula::kSigmaSearch, sigma_by_search(p, default_search_cap(p)),
          "d_cap=" + std::to_string(default_search_cap(p)));
  if (p.a >= 2) {
    auto [lo, hi] = sigma_bounds(p);
    rep.values.push_back({formula::kSigmaBounds, K::Bounds, 0, lo, hi, {}});
  }
  {
    PiValue v = pi(p);
    std::string note = v.conjectured ? "conjectured" : "";
    switch (v.kind) {
      case PiValue::Kind::Finite: integer(formula::kPi, v.value, note); break;
      case PiValue::Kind::Infinite: rep.values.push_back({formula::kPi, K::Infinity, 0, 0, 0, note}); break;
      case PiValue::Kind::Undetermined:
        rep.values.push_back({formula::kPi, K::Undetermined, 0, 0, 0, "not covered by the stated cases"});
        break;
    }
  }
  if (p.parity() == Parity::EE) integer(formula::kMu, big_n(p));
  if (p.s == 0 && p.a == 1 && p.t == 1) {
    auto [lo, hi] = mu_bounds(p.r);
    rep.values.push_back({formula::kMuBounds, K::Bounds, 0, lo, hi, {}});
  }

  auto record = [&](const std::string& l, std::int64_t lv, const std::string& r, std::int64_t rv, Relation::Kind kind) {
    Relation rel{l, r, kind, lv - rv};
    bool holds = kind == Relation::Kind::Equal ? lv == rv : lv <= rv;
    (holds ? rep.agreements : rep.discrepancies).push_back(std::move(rel));
  };

  std::vector<const FormulaValue*> sigmas;
  for (const char* name : {formula::kSigma, formula::kSigmaA1, formula::kSigmaRegular, formula::kSigmaEven,
                           formula::kSigmaSearch})
    if (const auto* v = rep.find(name)) sigmas.push_back(v);
  for (std::size_t i = 0; i < sigmas.size(); ++i)
    for (std::size_t j = i + 1; j < sigmas.size(); ++j)
      record(sigmas[i]->name, sigmas[i]->value, sigmas[j]->name, sigmas[j]->value, Relation::Kind::Equal);

  const std::int64_t n = big_n(p);
  for (const auto* sv : sigmas) record(formula::kBigN, n, sv->name, sv->value, Relation::Kind::AtMost);
  if (const auto* b = rep.find(formula::kSigmaBounds))
    for (const auto* sv : sigmas) {
      record(std::string(formula::kSigmaBounds) + ".lower", b->lower, sv->name, sv->value, Relation::Kind::AtMost);
      record(sv->name, sv->value, std::string(formula::kSigmaBounds) + ".upper", b->upper, Relation::Kind::AtMost);
    }
  if (const auto* m = rep.find(formula::kMuBounds))
    for (const auto* sv : sigmas)
      record(sv->name, sv->value, std::string(formula::kMuBounds) + ".upper", m->upper, Relation::Kind::AtMost);
  if (const auto* pv = rep.find(formula::kPi); pv && pv->kind == K::Integer)
    for (const auto* sv : sigmas) record(sv->name, sv->value, formula::kPi, pv->value, Relation::Kind::AtMost);
  return rep;
}

}  // namespace factor_forge
