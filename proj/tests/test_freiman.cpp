#include "sumfree/freiman.hpp"
#include "sumfree/selberg.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

using namespace sumfree;

namespace {

// Enumerates every M-element multiset of A ∪ {0} and checks that equal sums
// on one side match equal sums on the other.
bool iso_oracle(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b, int m) {
  std::vector<std::int64_t> ea{0}, eb{0};
  ea.insert(ea.end(), a.begin(), a.end());
  eb.insert(eb.end(), b.begin(), b.end());
  std::map<std::int64_t, std::int64_t> fwd, back;
  std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
  for (;;) {
    std::int64_t sa = 0, sb = 0;
    for (auto i : idx) {
      sa += ea[i];
      sb += eb[i];
    }
    auto [it1, new1] = fwd.emplace(sa, sb);
    auto [it2, new2] = back.emplace(sb, sa);
    if (it1->second != sb || it2->second != sa) return false;
    // next nondecreasing index vector
    int p = m - 1;
    while (p >= 0 && idx[static_cast<std::size_t>(p)] == ea.size() - 1) --p;
    if (p < 0) break;
    const std::size_t v = idx[static_cast<std::size_t>(p)] + 1;
    for (int q = p; q < m; ++q) idx[static_cast<std::size_t>(q)] = v;
  }
  return true;
}

std::int64_t ipow(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  while (e--) r *= b;
  return r;
}

bool slow_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("Freiman isomorphism examples") {
  for (int m = 1; m <= 5; ++m) CHECK(is_freiman_iso(std::vector<std::int64_t>{1, 2}, std::vector<std::int64_t>{3, 6}, m));
  CHECK_FALSE(is_freiman_iso(std::vector<std::int64_t>{1, 2, 3}, std::vector<std::int64_t>{1, 2, 4}, 2));
  CHECK(is_freiman_iso(std::vector<std::int64_t>{1, 10, 100}, std::vector<std::int64_t>{1, 4, 16}, 2));
  CHECK(is_freiman_iso(std::vector<std::int64_t>{1, 10, 100}, std::vector<std::int64_t>{1, 4, 16}, 3) == iso_oracle({1, 10, 100}, {1, 4, 16}, 3));
  CHECK_FALSE(is_freiman_iso(std::vector<std::int64_t>{1, 2, 5}, std::vector<std::int64_t>{1, 2, 4}, 2));
  CHECK_THROWS(is_freiman_iso(std::vector<std::int64_t>{1, 2}, std::vector<std::int64_t>{1}, 2));
  std::vector<std::int64_t> big(8, 0);
  for (int i = 0; i < 8; ++i) big[static_cast<std::size_t>(i)] = i + 1;
  CHECK_THROWS(is_freiman_iso(big, big, 5));
}

TEST_CASE("isomorphism test agrees with multiset enumeration") {
  std::mt19937_64 rng(12);
  for (int it = 0; it < 300; ++it) {
    const std::size_t n = 1 + rng() % 3;
    const int m = 1 + static_cast<int>(rng() % 3);
    std::vector<std::int64_t> a, b;
    for (std::size_t i = 0; i < n; ++i) {
      a.push_back(static_cast<std::int64_t>(rng() % 13) - 6);
      b.push_back(static_cast<std::int64_t>(rng() % 13) - 6);
    }
    bool ok = true;
    for (auto x : a) ok = ok && x != 0;
    for (auto x : b) ok = ok && x != 0;
    if (!ok) continue;
    CHECK(is_freiman_iso(a, b, m) == iso_oracle(a, b, m));
  }
}

TEST_CASE("primes and thresholds") {
  for (std::int64_t n = 0; n < 5000; ++n) CHECK(is_prime(static_cast<std::uint64_t>(n)) == slow_prime(n));
  CHECK(is_prime(1000000007ULL));
  CHECK(is_prime(18446744073709551557ULL));
  CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
  CHECK(root_threshold(1000, 2) == 31);
  CHECK(root_threshold(1024, 2) == 32);
  CHECK(root_threshold(1000, 3) == 100);
  CHECK(root_threshold(999, 3) == 99);
  CHECK(reduction_target(2, 2) == 256);
  CHECK(reduction_target(2, 3) == 4096);
}

TEST_CASE("reduction examples") {
  const std::vector<std::int64_t> small{3, 7, 11};
  const auto same = reduce_elements(small, 2);
  CHECK(same.result == small);
  CHECK(same.trace.steps.empty());

  const std::vector<std::int64_t> pair{1000000, 2000000};
  const auto r = reduce_elements(pair, 2);
  REQUIRE(r.result.size() == 2);
  CHECK(std::max(std::abs(r.result[0]), std::abs(r.result[1])) <= 256);
  CHECK(r.result[1] == 2 * r.result[0]);
  CHECK(is_freiman_iso(pair, r.result, 2));
  for (const auto& s : r.trace.steps) {
    CHECK(4 * 2 * s.ell < s.prime);
    CHECK(s.prime <= 8 * 2 * s.ell);
    CHECK(is_prime(static_cast<std::uint64_t>(s.prime)));
  }
}

TEST_CASE("reduction on random instances") {
  std::mt19937_64 rng(77);
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = 1 + rng() % 4;
    const std::int64_t m = 1 + static_cast<std::int64_t>(rng() % 3);
    std::vector<std::int64_t> a;
    while (a.size() < n) {
      std::int64_t x = 1 + static_cast<std::int64_t>(rng() % 10000000);
      if (rng() % 2) x = -x;
      bool fresh = true;
      for (auto y : a) fresh = fresh && y != x;
      if (fresh) a.push_back(x);
    }
    const auto r = reduce_elements(a, m);
    std::int64_t mx = 0;
    for (auto b : r.result) mx = std::max(mx, std::abs(b));
    CHECK(mx <= ipow(8 * m, static_cast<std::int64_t>(n)));
    if (ipow(2 * m + 1, static_cast<std::int64_t>(n)) <= 100000) CHECK(iso_oracle(a, r.result, static_cast<int>(m)));
    CHECK(is_freiman_iso(a, r.result, m));
    std::int64_t prev = INT64_MAX;
    for (const auto& s : r.trace.steps) {
      CHECK(s.ell < prev);
      prev = s.ell;
      const std::int64_t bound = root_threshold(s.prime, static_cast<std::int64_t>(n));
      for (auto b : s.image) CHECK(std::abs(b) <= bound);
    }
    const auto back = reduction_trace_from_json(nlohmann::json::parse(to_json(r.trace).dump()));
    CHECK(to_json(back) == to_json(r.trace));
  }
}

TEST_CASE("sign normalization") {
  CHECK(normalize_positive(std::vector<std::int64_t>{-3, 5}) == std::vector<std::int64_t>{3, 5});
  CHECK(normalize_positive(std::vector<std::int64_t>{2, 7}) == std::vector<std::int64_t>{2, 7});
  CHECK_THROWS(normalize_positive(std::vector<std::int64_t>{-3, 3}));
  const SelbergPoly s = selberg_minorant(5);
  const auto lhs = dilated_sum_max(IntegerSet{3, 5}, s);
  const DilatedSum signed_sum(s.f_form, {-3, 5});
  const double scan_diff = std::abs(signed_sum.eval(lhs.argmax) - lhs.value);
  CHECK(scan_diff < 1e-10);
}

TEST_CASE("moments are invariant under the reduction") {
  std::mt19937_64 rng(31);
  int done = 0;
  while (done < 6) {
    const std::size_t n = 1 + rng() % 3;
    const std::int64_t kk = 1 + static_cast<std::int64_t>(rng() % 3);
    const std::int64_t k = 1 + static_cast<std::int64_t>(rng() % 2);
    std::vector<std::int64_t> a;
    while (a.size() < n) {
      const std::int64_t x = 1 + static_cast<std::int64_t>(rng() % 10000000);
      if (std::find(a.begin(), a.end(), x) == a.end()) a.push_back(x);
    }
    const std::int64_t m = 2 * k * kk;
    const auto r = reduce_elements(a, m);
    const auto b = normalize_positive(r.result);
    const IntegerSet ia(a), ib(b);
    const SelbergPoly s = selberg_minorant(kk);
    std::int64_t nodes = 2 * k * kk * std::max(ia.max(), ib.max()) + 2;
    if (nodes > (std::int64_t{1} << 25)) continue;
    ++done;
    const double ma = moment_norm(ia, s, k, nodes).value;
    const double mb = moment_norm(ib, s, k).value;
    CHECK(std::abs(ma - mb) < 1e-8);
  }
}
