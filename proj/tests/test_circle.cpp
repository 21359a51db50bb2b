#include "sumfree/circle.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace sumfree;

namespace {

ExactRational q(std::int64_t p, std::int64_t d = 1) { return make_rational(p, d); }

// Both preimages are unions of cells [j/(3L), (j+1)/(3L)), L = lcm(a, b), so
// counting cells gives the exact measure.
ExactRational grid_intersection_measure(std::int64_t a, std::int64_t b) {
  const std::int64_t l = std::lcm(a, b), n = 3 * l;
  std::int64_t cells = 0;
  for (std::int64_t j = 0; j < n; ++j) {
    const std::int64_t ra = (a * j) % n, rb = (b * j) % n;
    cells += ra >= l && ra < 2 * l && rb >= l && rb < 2 * l;
  }
  return q(cells, n);
}

bool in_middle(std::int64_t a, const ExactRational& x) {
  ExactRational y = frac_of(x * a);
  return y >= q(1, 3) && y < q(2, 3);
}

}  // namespace

TEST_CASE("frac") {
  CHECK(frac(q(7, 3)).value() == q(1, 3));
  CHECK(frac(q(-1, 4)).value() == q(3, 4));
  CHECK(frac(q(0)).value() == 0);
  CHECK(CirclePoint(q(5, 2)) == CirclePoint(q(1, 2)));
}

TEST_CASE("middle third preimages") {
  CHECK(middle_third_preimage(1) == IntervalSet::from_arcs({{q(1, 3), q(2, 3)}}));
  CHECK(middle_third_preimage(2) == IntervalSet::from_arcs({{q(1, 6), q(1, 3)}, {q(2, 3), q(5, 6)}}));
  CHECK(middle_third_preimage(3) ==
        IntervalSet::from_arcs({{q(1, 9), q(2, 9)}, {q(4, 9), q(5, 9)}, {q(7, 9), q(8, 9)}}));
  CHECK_THROWS(middle_third_preimage(0));
  for (std::int64_t a = 1; a <= 200; ++a) CHECK(measure(middle_third_preimage(a)) == q(1, 3));
}

TEST_CASE("canonical form") {
  auto s = IntervalSet::from_arcs({{q(1, 2), q(3, 4)}, {q(1, 4), q(1, 2)}, {q(7, 8), q(9, 8)}});
  REQUIRE(s.arcs().size() == 3);
  CHECK(s.arcs()[0] == Arc{q(0), q(1, 8)});
  CHECK(s.arcs()[1] == Arc{q(1, 4), q(3, 4)});
  CHECK(s.arcs()[2] == Arc{q(7, 8), q(1)});
  CHECK(IntervalSet::from_arcs({{q(-1, 3), q(5, 3)}}) == IntervalSet::full());
  CHECK(measure(IntervalSet{}) == 0);
  CHECK(s.contains(CirclePoint(q(1, 4))));
  CHECK_FALSE(s.contains(CirclePoint(q(3, 4))));
  CHECK(s.contains(CirclePoint(q(0))));
}

TEST_CASE("set operations") {
  const auto p1 = middle_third_preimage(1), p2 = middle_third_preimage(2), p3 = middle_third_preimage(3);
  CHECK(intersect(p1, p2).empty());
  CHECK(unite(p1, IntervalSet{}) == p1);
  CHECK(intersect(p1, p3) == IntervalSet::from_arcs({{q(4, 9), q(5, 9)}}));
  CHECK(measure(intersect(p2, middle_third_preimage(5))) == q(2, 15));
  CHECK(complement(IntervalSet::full()) == IntervalSet{});
  CHECK(combine(p1, p3, SetOp::complement) ==
        IntervalSet::from_arcs({{q(1, 3), q(4, 9)}, {q(5, 9), q(2, 3)}}));
}

TEST_CASE("measure is additive and monotone") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> pick(1, 30);
  for (int it = 0; it < 200; ++it) {
    const auto s = middle_third_preimage(pick(rng));
    const auto t = middle_third_preimage(pick(rng));
    const auto st = intersect(s, t);
    CHECK(measure(unite(s, t)) + measure(st) == measure(s) + measure(t));
    CHECK(measure(st) <= measure(s));
    CHECK(measure(combine(s, t, SetOp::complement)) == measure(s) - measure(st));
    CHECK(measure(complement(s)) == 1 - measure(s));
  }
}

TEST_CASE("membership agrees with pointwise definition") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 100; ++it) {
    const std::int64_t a = 1 + rng() % 20, b = 1 + rng() % 20;
    const auto st = intersect(middle_third_preimage(a), middle_third_preimage(b));
    for (std::int64_t j = 0; j < 97; ++j) {
      const auto x = q(j, 97);
      CHECK(st.contains(CirclePoint(x)) == (in_middle(a, x) && in_middle(b, x)));
    }
    for (const auto& arc : st.arcs()) {
      CHECK(st.contains(CirclePoint(arc.left)));
      if (arc.right < 1) CHECK_FALSE(st.contains(CirclePoint(arc.right)));
    }
  }
}

TEST_CASE("two-element measure formula") {
  CHECK(two_element_measure_formula(1, 2) == 0);
  CHECK(two_element_measure_formula(1, 1) == q(1, 3));
  CHECK(two_element_measure_formula(1, 3) == q(1, 9));
  CHECK(measure(intersect(middle_third_preimage(1), middle_third_preimage(3))) == q(1, 9));
  CHECK_THROWS(two_element_measure_formula(2, 4));
  for (std::int64_t a = 1; a <= 30; ++a)
    for (std::int64_t b = a + 1; b <= 30; ++b) {
      if (std::gcd(a, b) != 1) continue;
      CHECK(grid_intersection_measure(a, b) == two_element_measure_formula(a, b));
    }
}

TEST_CASE("chi3") {
  CHECK(chi3(1) == 1);
  CHECK(chi3(2) == -1);
  CHECK(chi3(3) == 0);
  CHECK(chi3(-1) == -1);
  CHECK(chi3(10) == 1);
}

TEST_CASE("bohr sets") {
  std::vector<std::int64_t> one{1}, onetwo{1, 2};
  CHECK(measure(bohr_set(one, q(1, 4))) == q(1, 2));
  CHECK(measure(bohr_set(onetwo, q(1, 8))) == q(1, 8));
  for (std::int64_t v = 1; v <= 20; ++v) {
    std::vector<std::int64_t> f{v};
    CHECK(measure(bohr_set(f, q(1, 10))) == q(1, 5));
  }
  CHECK_THROWS(bohr_set(one, q(1, 2)));
  CHECK_THROWS(bohr_set(one, q(0)));
  CHECK_THROWS(bohr_set(std::span<const std::int64_t>{}, q(1, 4)));

  // measure >= eps^|F| over small frequency lists
  std::mt19937_64 rng(3);
  for (int it = 0; it < 300; ++it) {
    std::vector<std::int64_t> f(1 + rng() % 4);
    for (auto& v : f) v = 1 + static_cast<std::int64_t>(rng() % 12);
    for (const auto& eps : {q(1, 6), q(1, 10)}) {
      ExactRational floor = 1;
      for (std::size_t i = 0; i < f.size(); ++i) floor *= eps;
      CHECK(measure(bohr_set(f, eps)) >= floor);
    }
  }

  // pointwise: ||v x|| <= eps for every v
  std::vector<std::int64_t> f{3, 5};
  const auto b = bohr_set(f, q(1, 10));
  for (std::int64_t j = 0; j < 211; ++j) {
    const auto x = q(j, 211);
    bool inside = true;
    for (auto v : f) {
      auto y = frac_of(x * v);
      auto d = y < q(1, 2) ? y : 1 - y;
      inside = inside && d <= q(1, 10);
    }
    CHECK(b.contains(CirclePoint(x)) == inside);
  }

  // shrinking eps shrinks the set
  ExactRational prev = 1;
  for (std::int64_t d = 3; d <= 40; ++d) {
    auto m = measure(bohr_set(onetwo, q(1, d)));
    CHECK(m <= prev);
    prev = m;
  }
}

TEST_CASE("json round trip") {
  const auto s = intersect(middle_third_preimage(7), middle_third_preimage(11));
  const auto j = to_json(s);
  CHECK(j.is_array());
  CHECK(j[0].size() == 4);
  CHECK(interval_set_from_json(j) == s);
  CHECK(interval_set_from_json(nlohmann::json::parse(j.dump())) == s);
}
