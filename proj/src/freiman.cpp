// freiman.cpp

#include "sumfree/freiman.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <limits>
#include <set>

namespace sumfree {

namespace {

// Walks coefficient vectors with positive weight <= M and negative weight
// <= M; zero absorbs the slack on either side.
class RelationWalker {
 public:
  RelationWalker(std::span<const std::int64_t> x, std::span<const std::int64_t> y, std::int64_t m)
      : x_(x), y_(y), m_(m) {}

  bool run() { return visit(0, 0, 0, 0, 0, true); }

 private:
  bool visit(std::size_t i, std::int64_t pos, std::int64_t neg, __int128 sx, __int128 sy, bool all_zero) {
    if (i == x_.size()) {
      if (all_zero) return true;
      return (sx == 0) == (sy == 0);
    }
    for (std::int64_t c = -(m_ - neg); c <= m_ - pos; ++c) {
      std::int64_t p2 = pos + (c > 0 ? c : 0);
      std::int64_t n2 = neg + (c < 0 ? -c : 0);
      if (!visit(i + 1, p2, n2, sx + static_cast<__int128>(c) * x_[i], sy + static_cast<__int128>(c) * y_[i],
                 all_zero && c == 0)) {
        return false;
      }
    }
    return true;
  }

  std::span<const std::int64_t> x_;
  std::span<const std::int64_t> y_;
  std::int64_t m_;
};

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::int64_t centered(std::int64_t r, std::int64_t p) { return r > p / 2 ? r - p : r; }

}  // namespace

bool is_freiman_iso(std::span<const std::int64_t> source, std::span<const std::int64_t> target,
                    std::int64_t order) {
  if (source.size() != target.size()) throw std::invalid_argument("sets must have equal size");
  if (order < 1) throw std::invalid_argument("order must be positive");
  double work = 1;
  for (std::size_t i = 0; i < source.size(); ++i) {
    work *= static_cast<double>(2 * order + 1);
    if (work > static_cast<double>(kMaxFreimanEnumeration)) {
      throw std::invalid_argument("(2M+1)^n exceeds the exhaustive enumeration limit");
    }
  }
  return RelationWalker(source, target, order).run();
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic for all 64-bit n
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::int64_t root_threshold(std::int64_t p, std::int64_t n) {
  if (p < 1 || n < 1) throw std::invalid_argument("root_threshold needs positive arguments");
  mpz_class power;
  mpz_class base(static_cast<long>(p));
  mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(n - 1));
  mpz_class root;
  mpz_root(root.get_mpz_t(), power.get_mpz_t(), static_cast<unsigned long>(n));
  return root.get_si();
}

std::int64_t reduction_target(std::int64_t order, std::int64_t n) {
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < n; ++i) {
    if (r > std::numeric_limits<std::int64_t>::max() / (8 * order)) {
      return std::numeric_limits<std::int64_t>::max();
    }
    r *= 8 * order;
  }
  return r;
}

Reduction reduce_elements(std::span<const std::int64_t> a, std::int64_t order) {
  if (order < 1) throw std::invalid_argument("order must be positive");
  if (a.empty()) throw std::invalid_argument("reduction needs a nonempty set");
  std::set<std::int64_t> seen;
  for (std::int64_t x : a) {
    if (x == 0) throw std::invalid_argument("elements must be nonzero");
    if (!seen.insert(x).second) throw std::invalid_argument("elements must be distinct");
  }
  const auto n = static_cast<std::int64_t>(a.size());
  const std::int64_t target = reduction_target(order, n);
  Reduction out;
  out.result.assign(a.begin(), a.end());
  while (true) {
    std::int64_t ell = 0;
    for (std::int64_t x : out.result) ell = std::max(ell, x < 0 ? -x : x);
    if (ell <= target) break;
    if (ell > std::numeric_limits<std::int64_t>::max() / (16 * order)) {
      throw std::invalid_argument("elements too large for 64-bit reduction");
    }
    ReductionStep step;
    step.ell = ell;
    std::int64_t p = 4 * order * ell + 1;
    while (!is_prime(static_cast<std::uint64_t>(p))) ++p;
    if (p > 8 * order * ell) throw ReductionError("no prime in (4M ell, 8M ell]", out.trace);
    step.prime = p;
    step.bound = root_threshold(p, n);

    std::vector<std::int64_t> residue(out.result.size());
    std::vector<std::int64_t> stride(out.result.size());
    for (std::size_t i = 0; i < out.result.size(); ++i) {
      stride[i] = ((out.result[i] % p) + p) % p;
      residue[i] = 0;
    }
    std::vector<std::int64_t> image(out.result.size());
    bool found = false;
    for (std::int64_t t = 1; t < p && !found; ++t) {
      bool ok = true;
      for (std::size_t i = 0; i < residue.size(); ++i) {
        residue[i] += stride[i];
        if (residue[i] >= p) residue[i] -= p;
        if (ok) {
          std::int64_t c = centered(residue[i], p);
          if (c > step.bound || c < -step.bound) ok = false;
        }
      }
      if (!ok) continue;
      for (std::size_t i = 0; i < residue.size(); ++i) image[i] = centered(residue[i], p);
      std::set<std::int64_t> distinct(image.begin(), image.end());
      if (distinct.size() != image.size() || distinct.count(0)) {
        ++step.rejected;
        continue;
      }
      step.multiplier = t;
      found = true;
    }
    if (!found) {
      out.trace.steps.push_back(step);
      throw ReductionError("no admissible multiplier; lattice bound violated", out.trace);
    }
    step.image = image;
    out.result = image;
    out.trace.steps.push_back(std::move(step));
  }
  return out;
}

std::vector<std::int64_t> normalize_positive(std::span<const std::int64_t> b) {
  std::set<std::int64_t> s(b.begin(), b.end());
  std::vector<std::int64_t> out;
  out.reserve(b.size());
  for (std::int64_t x : b) {
    if (x == 0) throw std::invalid_argument("zero element");
    if (s.count(-x)) throw std::invalid_argument("set meets its negation");
    out.push_back(x < 0 ? -x : x);
  }
  return out;
}

nlohmann::json to_json(const ReductionTrace& t) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : t.steps) {
    steps.push_back({{"ell", s.ell},
                     {"p", s.prime},
                     {"t", s.multiplier},
                     {"bound", s.bound},
                     {"rejected", s.rejected},
                     {"image", s.image}});
  }
  return steps;
}

ReductionTrace reduction_trace_from_json(const nlohmann::json& j) {
  ReductionTrace t;
  for (const auto& s : j) {
    ReductionStep step;
    step.ell = s.at("ell").get<std::int64_t>();
    step.prime = s.at("p").get<std::int64_t>();
    step.multiplier = s.at("t").get<std::int64_t>();
    step.bound = s.at("bound").get<std::int64_t>();
    step.rejected = s.at("rejected").get<std::int64_t>();
    step.image = s.at("image").get<std::vector<std::int64_t>>();
    t.steps.push_back(std::move(step));
  }
  return t;
}

}  // namespace sumfree
