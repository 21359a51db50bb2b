// step.hpp
//
// The step-function engine. f(x) = 1_[1/3,2/3)(x) - 1/3 and
// f_A(x) = sum_{a in A} f(a x); m_A is the maximum of f_A over the circle and
// s(A) the size of the largest sum-free subset of A.

#pragma once

#include "sumfree/circle.hpp"
#include "sumfree/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sumfree {

// Sorted set of distinct positive integers, with its gcd and the split into
// elements coprime to 3 (a0) and divisible by 3 (a1).
class IntegerSet {
 public:
  IntegerSet() = default;
  // Sorts the input. Throws std::invalid_argument on non-positive or repeated
  // elements.
  explicit IntegerSet(std::vector<std::int64_t> elements);
  IntegerSet(std::initializer_list<std::int64_t> elements)
      : IntegerSet(std::vector<std::int64_t>(elements)) {}

  std::span<const std::int64_t> elements() const { return elements_; }
  const std::vector<std::int64_t>& a0() const { return a0_; }
  const std::vector<std::int64_t>& a1() const { return a1_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  // gcd of the elements; 0 for the empty set.
  std::int64_t gcd() const { return gcd_; }
  std::int64_t max() const { return elements_.empty() ? 0 : elements_.back(); }
  bool contains(std::int64_t a) const;

  IntegerSet dilate(std::int64_t d) const;
  // Divides every element by d, which must divide all of them.
  IntegerSet divide(std::int64_t d) const;
  IntegerSet normalized() const { return empty() ? *this : divide(gcd_); }

  std::string to_string() const;  // "1,2,3"

  friend bool operator==(const IntegerSet& a, const IntegerSet& b) {
    return a.elements_ == b.elements_;
  }
  friend bool operator<(const IntegerSet& a, const IntegerSet& b) {
    return a.elements_ < b.elements_;
  }

 private:
  std::vector<std::int64_t> elements_;
  std::vector<std::int64_t> a0_;
  std::vector<std::int64_t> a1_;
  std::int64_t gcd_ = 0;
};

IntegerSet parse_integer_set(std::string_view text);

struct MaxResult {
  ExactRational m;
  std::vector<CirclePoint> witnesses;
};

struct SumFreeResult {
  std::size_t size = 0;
  std::vector<std::int64_t> witness;
};

class SearchLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ExactRational eval_f(const CirclePoint& x);
ExactRational eval_fA(const IntegerSet& a, const CirclePoint& x);

// Number of a in A with frac(a p / q) in [1/3, 2/3). Requires q > 0.
int middle_count(const IntegerSet& a, std::int64_t p, std::int64_t q);

// Largest number of elements simultaneously in the middle third, i.e.
// m_A + n/3. Integer-only breakpoint scan, no witnesses.
int max_middle_count(const IntegerSet& a);

// f_A is right-continuous and only jumps up at points (3k+1)/(3a), so the
// maximum is attained there; witnesses are all such maximizing points.
MaxResult max_fA(const IntegerSet& a);

bool is_sum_free(std::span<const std::int64_t> elements);

// Exact branch-and-bound search. Among maximum subsets the witness whose
// membership vector (over the sorted elements) is lexicographically smallest
// is returned, so larger elements are preferred.
SumFreeResult largest_sum_free(const IntegerSet& a, std::size_t limit = 20);

struct Decomposition {
  IntegerSet a0;
  IntegerSet a1;
  IntegerSet b;  // a1 / 3
};

Decomposition decompose3(const IntegerSet& a);

struct ReductionBounds {
  ExactRational lem1;  // |A0|/6 - |A1|/3
  ExactRational m;
  std::optional<ExactRational> m_a1;
  bool lem1_holds = false;
  bool lem2_holds = false;  // m_A >= m_{A1}; vacuous when A1 is empty
};

ReductionBounds reduction_bounds(const IntegerSet& a);

// A = C_0, C_1, ... with C_{i+1} = (C_i)_1 / 3. The input is first divided by
// its gcd. Stops when (C_i)_1 is empty or the next set would have fewer than
// base_size elements.
std::vector<IntegerSet> reduce_chain(const IntegerSet& a, std::size_t base_size = 2);

struct L1Norm {
  double value = 0;
  std::int64_t grid = 0;
};

// Periodic trapezoid rule for the L^1 norm of sum_{a in A} cos(2 pi a x).
L1Norm l1_cosine_norm(const IntegerSet& a, std::int64_t grid);

}  // namespace sumfree

namespace sumfree {

// True once some breakpoint has at least `target` elements in the middle
// third; stops scanning at the first such point.
bool middle_count_reaches(const IntegerSet& a, int target);

// Brute-force m_A + n/3 over every point j / (3 lcm(A)). Returns nullopt when
// lcm(A) exceeds max_lcm.
std::optional<int> max_middle_count_lcm_grid(const IntegerSet& a, std::int64_t max_lcm);

}  // namespace sumfree
