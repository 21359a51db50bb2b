// circle.hpp
//
// Exact arithmetic on the unit circle T = R/Z. Points are rationals in [0,1);
// subsets are finite unions of half-open arcs [left, right) kept in a
// canonical form (sorted, disjoint, touching arcs merged, nothing wraps past
// 1), so two equal sets always have equal representations.

#pragma once

#include "sumfree/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace sumfree {

class CirclePoint {
 public:
  CirclePoint() = default;
  // Reduces x mod 1.
  explicit CirclePoint(const ExactRational& x);

  const ExactRational& value() const { return value_; }

  friend bool operator==(const CirclePoint&, const CirclePoint&) = default;
  friend bool operator<(const CirclePoint& a, const CirclePoint& b) { return a.value_ < b.value_; }

 private:
  ExactRational value_{0};
};

CirclePoint frac(const ExactRational& x);

struct Arc {
  ExactRational left;
  ExactRational right;

  friend bool operator==(const Arc&, const Arc&) = default;
};

class IntervalSet {
 public:
  IntervalSet() = default;

  // Canonicalizes arbitrary arcs. Each input arc [l, r) with l < r is read mod
  // 1; an arc of length >= 1 covers the whole circle.
  static IntervalSet from_arcs(std::vector<Arc> arcs);
  static IntervalSet full();

  const std::vector<Arc>& arcs() const { return arcs_; }
  bool empty() const { return arcs_.empty(); }
  bool contains(const CirclePoint& x) const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Arc> arcs_;
};

enum class SetOp { intersect, unite, complement };

// complement computes the relative complement S \ T.
IntervalSet combine(const IntervalSet& s, const IntervalSet& t, SetOp mode);
IntervalSet intersect(const IntervalSet& s, const IntervalSet& t);
IntervalSet unite(const IntervalSet& s, const IntervalSet& t);
IntervalSet complement(const IntervalSet& s);

ExactRational measure(const IntervalSet& s);

// {x : frac(a x) in [1/3, 2/3)}.
IntervalSet middle_third_preimage(std::int64_t a);

// {x : frac(a x) in [lo, hi)} for 0 <= lo < hi <= 1.
IntervalSet dilated_preimage(std::int64_t a, const ExactRational& lo, const ExactRational& hi);

// Nontrivial character mod 3: +1, -1, 0 for n = 1, 2, 0 (mod 3).
int chi3(std::int64_t n);

// (1/9)(1 + 2 chi(ab)/(ab)); only defined for coprime a, b.
ExactRational two_element_measure_formula(std::int64_t a, std::int64_t b);

// {x : ||v x|| <= eps for every v in freqs}, stored half-open.
IntervalSet bohr_set(std::span<const std::int64_t> freqs, const ExactRational& eps);

// Arrays of [num_left, den_left, num_right, den_right].
nlohmann::json to_json(const IntervalSet& s);
IntervalSet interval_set_from_json(const nlohmann::json& j);

}  // namespace sumfree
