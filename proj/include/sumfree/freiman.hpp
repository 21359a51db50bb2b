// freiman.hpp
//
// Freiman isomorphisms of bounded order between integer sets, with zero
// adjoined and fixed, and the element-size reduction that maps any set of n
// nonzero integers to an isomorphic copy inside [-(8M)^n, (8M)^n].

#pragma once

#include <json.hpp>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace sumfree {

inline constexpr std::int64_t kMaxFreimanEnumeration = 100'000'000;

// True iff i -> target[i] (with 0 -> 0) preserves every relation
// sum c_i x_i = 0 whose positive and negative parts each have weight <= M,
// in both directions. Throws std::invalid_argument when (2M+1)^n exceeds
// the enumeration limit or the sizes differ.
bool is_freiman_iso(std::span<const std::int64_t> source, std::span<const std::int64_t> target,
                    std::int64_t order);

struct ReductionStep {
  std::int64_t ell = 0;         // max |a| before the step
  std::int64_t prime = 0;       // least prime in (4 M ell, 8 M ell]
  std::int64_t multiplier = 0;  // least admissible t
  std::int64_t bound = 0;       // floor(p^{1 - 1/n})
  std::int64_t rejected = 0;    // multipliers skipped for zero or colliding images
  std::vector<std::int64_t> image;
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
};

struct Reduction {
  std::vector<std::int64_t> result;
  ReductionTrace trace;
};

class ReductionError : public std::logic_error {
 public:
  ReductionError(const std::string& what, ReductionTrace trace)
      : std::logic_error(what), trace_(std::move(trace)) {}
  const ReductionTrace& trace() const { return trace_; }

 private:
  ReductionTrace trace_;
};

bool is_prime(std::uint64_t n);
// floor(p^{(n-1)/n}), exact.
std::int64_t root_threshold(std::int64_t p, std::int64_t n);
// (8M)^n, saturating at INT64_MAX.
std::int64_t reduction_target(std::int64_t order, std::int64_t n);

Reduction reduce_elements(std::span<const std::int64_t> a, std::int64_t order);

// Absolute values; rejects inputs with b and -b both present.
std::vector<std::int64_t> normalize_positive(std::span<const std::int64_t> b);

nlohmann::json to_json(const ReductionTrace& t);
ReductionTrace reduction_trace_from_json(const nlohmann::json& j);

}  // namespace sumfree
