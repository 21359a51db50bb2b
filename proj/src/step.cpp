// step.cpp

#include "sumfree/step.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace sumfree {

IntegerSet::IntegerSet(std::vector<std::int64_t> elements) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] <= 0) throw std::invalid_argument("set elements must be positive");
    if (i > 0 && elements_[i] == elements_[i - 1]) {
      throw std::invalid_argument("set elements must be distinct");
    }
    gcd_ = std::gcd(gcd_, elements_[i]);
    (elements_[i] % 3 == 0 ? a1_ : a0_).push_back(elements_[i]);
  }
}

bool IntegerSet::contains(std::int64_t a) const {
  return std::binary_search(elements_.begin(), elements_.end(), a);
}

IntegerSet IntegerSet::dilate(std::int64_t d) const {
  if (d < 1) throw std::invalid_argument("dilation must be positive");
  std::vector<std::int64_t> out(elements_);
  for (auto& x : out) x *= d;
  return IntegerSet(std::move(out));
}

IntegerSet IntegerSet::divide(std::int64_t d) const {
  if (d < 1) throw std::invalid_argument("divisor must be positive");
  std::vector<std::int64_t> out(elements_);
  for (auto& x : out) {
    if (x % d != 0) throw std::invalid_argument("divisor does not divide every element");
    x /= d;
  }
  return IntegerSet(std::move(out));
}

std::string IntegerSet::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(elements_[i]);
  }
  return s;
}

IntegerSet parse_integer_set(std::string_view text) {
  std::vector<std::int64_t> out;
  std::string token;
  std::istringstream in{std::string(text)};
  while (std::getline(in, token, ',')) {
    auto b = token.find_first_not_of(" \t");
    auto e = token.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty element in set literal");
    token = token.substr(b, e - b + 1);
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(token, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed set element: " + token);
    }
    if (used != token.size()) throw std::invalid_argument("malformed set element: " + token);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty set literal");
  return IntegerSet(std::move(out));
}

ExactRational eval_f(const CirclePoint& x) {
  static const ExactRational lo = make_rational(1, 3);
  static const ExactRational hi = make_rational(2, 3);
  return (x.value() >= lo && x.value() < hi) ? hi : -lo;
}

ExactRational eval_fA(const IntegerSet& a, const CirclePoint& x) {
  const BigInt& num = x.value().get_num();
  const BigInt& den = x.value().get_den();
  BigInt r;
  std::int64_t hits = 0;
  for (std::int64_t e : a.elements()) {
    r = num * e;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), den.get_mpz_t());
    r *= 3;
    if (r >= den && r < 2 * den) ++hits;
  }
  return ExactRational(hits) - make_rational(static_cast<std::int64_t>(a.size()), 3);
}

int middle_count(const IntegerSet& a, std::int64_t p, std::int64_t q) {
  if (q <= 0) throw std::invalid_argument("denominator must be positive");
  int hits = 0;
  for (std::int64_t e : a.elements()) {
    __int128 r = (static_cast<__int128>(e) * p) % q;
    if (r < 0) r += q;
    r *= 3;
    if (r >= q && r < 2 * static_cast<__int128>(q)) ++hits;
  }
  return hits;
}

namespace {

// Visits every breakpoint (3k+1)/(3a) with the number of elements in the
// middle third there. Residues b(3k+1) mod 3a are advanced incrementally.
template <typename Visit>
void scan_breakpoints(const IntegerSet& set, Visit&& visit) {
  const auto elems = set.elements();
  std::vector<std::int64_t> residue(elems.size());
  std::vector<std::int64_t> stride(elems.size());
  for (std::int64_t a : elems) {
    const std::int64_t q = 3 * a;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      residue[i] = elems[i] % q;
      stride[i] = (3 * elems[i]) % q;
    }
    for (std::int64_t k = 0; k < a; ++k) {
      int hits = 0;
      for (std::size_t i = 0; i < elems.size(); ++i) {
        hits += (residue[i] >= a && residue[i] < 2 * a);
        residue[i] += stride[i];
        if (residue[i] >= q) residue[i] -= q;
      }
      visit(hits, 3 * k + 1, q);
    }
  }
}

}  // namespace

int max_middle_count(const IntegerSet& a) {
  if (a.empty()) throw std::invalid_argument("max_fA needs a nonempty set");
  int best = 0;
  scan_breakpoints(a, [&](int hits, std::int64_t, std::int64_t) {
    if (hits > best) best = hits;
  });
  return best;
}

MaxResult max_fA(const IntegerSet& a) {
  if (a.empty()) throw std::invalid_argument("max_fA needs a nonempty set");
  int best = 0;  // f_A(0) corresponds to zero hits
  std::vector<std::pair<std::int64_t, std::int64_t>> at_best;
  scan_breakpoints(a, [&](int hits, std::int64_t p, std::int64_t q) {
    if (hits > best) {
      best = hits;
      at_best.clear();
    }
    if (hits == best) {
      std::int64_t g = std::gcd(p, q);
      at_best.emplace_back(p / g, q / g);
    }
  });
  std::sort(at_best.begin(), at_best.end(), [](const auto& x, const auto& y) {
    return static_cast<__int128>(x.first) * y.second < static_cast<__int128>(y.first) * x.second;
  });
  at_best.erase(std::unique(at_best.begin(), at_best.end()), at_best.end());
  MaxResult out;
  out.m = ExactRational(best) - make_rational(static_cast<std::int64_t>(a.size()), 3);
  out.witnesses.reserve(at_best.size());
  for (auto [p, q] : at_best) out.witnesses.emplace_back(make_rational(p, q));
  return out;
}

bool is_sum_free(std::span<const std::int64_t> elements) {
  std::vector<std::int64_t> s(elements.begin(), elements.end());
  std::sort(s.begin(), s.end());
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i; j < s.size(); ++j) {
      if (std::binary_search(s.begin(), s.end(), s[i] + s[j])) return false;
    }
  }
  return true;
}

namespace {

class SumFreeSearch {
 public:
  explicit SumFreeSearch(std::span<const std::int64_t> elems) : elems_(elems.begin(), elems.end()) {}

  SumFreeResult run() {
    current_.clear();
    dfs(0);
    return {best_.size(), best_};
  }

 private:
  // Elements are added in increasing order, so a new z can only be the sum
  // of two members already chosen.
  bool compatible(std::int64_t z) const {
    for (std::int64_t x : current_) {
      if (2 * x > z) break;
      if (std::binary_search(current_.begin(), current_.end(), z - x)) return false;
    }
    return true;
  }

  // Exclusion is tried first so complete assignments are visited in
  // lexicographic order of their membership vectors.
  void dfs(std::size_t i) {
    if (found_ && current_.size() + (elems_.size() - i) <= best_.size()) return;
    if (i == elems_.size()) {
      if (!found_ || current_.size() > best_.size()) {
        best_ = current_;
        found_ = true;
      }
      return;
    }
    dfs(i + 1);
    if (compatible(elems_[i])) {
      current_.push_back(elems_[i]);
      dfs(i + 1);
      current_.pop_back();
    }
  }

  std::vector<std::int64_t> elems_;
  std::vector<std::int64_t> current_;
  std::vector<std::int64_t> best_;
  bool found_ = false;
};

}  // namespace

SumFreeResult largest_sum_free(const IntegerSet& a, std::size_t limit) {
  if (a.size() > limit) {
    throw SearchLimitError("set of size " + std::to_string(a.size()) +
                           " too large for exact search (limit " + std::to_string(limit) + ")");
  }
  return SumFreeSearch(a.elements()).run();
}

Decomposition decompose3(const IntegerSet& a) {
  Decomposition d{IntegerSet(a.a0()), IntegerSet(a.a1()), IntegerSet()};
  d.b = d.a1.empty() ? IntegerSet() : d.a1.divide(3);
  return d;
}

ReductionBounds reduction_bounds(const IntegerSet& a) {
  ReductionBounds r;
  r.lem1 = make_rational(static_cast<std::int64_t>(a.a0().size()), 6) -
           make_rational(static_cast<std::int64_t>(a.a1().size()), 3);
  r.m = max_fA(a).m;
  r.lem1_holds = r.m >= r.lem1;
  if (a.a1().empty()) {
    r.lem2_holds = true;
  } else {
    r.m_a1 = max_fA(IntegerSet(a.a1())).m;
    r.lem2_holds = r.m >= *r.m_a1;
  }
  return r;
}

std::vector<IntegerSet> reduce_chain(const IntegerSet& a, std::size_t base_size) {
  std::vector<IntegerSet> chain;
  if (a.empty()) return chain;
  chain.push_back(a.normalized());
  while (true) {
    const IntegerSet& c = chain.back();
    if (c.a1().empty()) break;
    IntegerSet next = IntegerSet(c.a1()).divide(3);
    if (next.size() < base_size) break;
    chain.push_back(std::move(next));
  }
  return chain;
}

L1Norm l1_cosine_norm(const IntegerSet& a, std::int64_t grid) {
  if (a.empty()) return {0.0, grid};
  if (grid < 64 * a.max()) throw std::invalid_argument("grid must be at least 64 max(A)");
  double total = 0;
  for (std::int64_t j = 0; j < grid; ++j) {
    double s = 0;
    for (std::int64_t e : a.elements()) {
      std::int64_t r = static_cast<std::int64_t>((static_cast<__int128>(e) * j) % grid);
      s += std::cos(2 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(grid));
    }
    total += std::abs(s);
  }
  return {total / static_cast<double>(grid), grid};
}

}  // namespace sumfree

namespace sumfree {

bool middle_count_reaches(const IntegerSet& a, int target) {
  if (target <= 0) return true;
  const auto elems = a.elements();
  std::vector<std::int64_t> residue(elems.size());
  std::vector<std::int64_t> stride(elems.size());
  for (std::int64_t e : elems) {
    const std::int64_t q = 3 * e;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      residue[i] = elems[i] % q;
      stride[i] = (3 * elems[i]) % q;
    }
    for (std::int64_t k = 0; k < e; ++k) {
      int hits = 0;
      for (std::size_t i = 0; i < elems.size(); ++i) {
        hits += (residue[i] >= e && residue[i] < 2 * e);
        residue[i] += stride[i];
        if (residue[i] >= q) residue[i] -= q;
      }
      if (hits >= target) return true;
    }
  }
  return false;
}

std::optional<int> max_middle_count_lcm_grid(const IntegerSet& a, std::int64_t max_lcm) {
  if (a.empty()) throw std::invalid_argument("empty set");
  std::int64_t l = 1;
  for (std::int64_t e : a.elements()) {
    l = std::lcm(l, e);
    if (l > max_lcm) return std::nullopt;
  }
  const std::int64_t q = 3 * l;
  int best = 0;
  for (std::int64_t j = 0; j < q; ++j) best = std::max(best, middle_count(a, j, q));
  return best;
}

}  // namespace sumfree
