#include "sumfree/certify.hpp"

#include "closed_forms.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

using namespace sumfree;

namespace {

ExactRational q(std::int64_t p, std::int64_t d = 1) { return make_rational(p, d); }

CosinePoly c(std::int64_t j, std::int64_t num = 1, std::int64_t den = 1) {
  return CosinePoly::term(j, q(num, den));
}

// int phi f_A by integrating each cosine exactly over the arcs where
// frac(a x) lies in [1/3, 2/3).
long double quadrature(const CosinePoly& phi, const IntegerSet& a) {
  const long double pi = std::numbers::pi_v<long double>;
  long double total = 0;
  for (const auto& [j, b] : phi.coeffs()) {
    const long double bj = b.get_d();
    for (auto e : a.elements()) {
      long double s = 0;
      if (j == 0) {
        s = 1.0L / 3 - 1.0L / 3;
      } else {
        for (std::int64_t k = 0; k < e; ++k) {
          const long double l = (3.0L * k + 1) / (3.0L * e), r = (3.0L * k + 2) / (3.0L * e);
          s += (std::sin(2 * pi * j * r) - std::sin(2 * pi * j * l)) / (2 * pi * j);
        }
      }
      total += bj * s;
    }
  }
  return total;
}

IntegerSet random_set(std::mt19937_64& rng, std::size_t max_n, std::int64_t max_elem) {
  const std::size_t n = 1 + rng() % max_n;
  std::vector<std::int64_t> v;
  while (v.size() < n) {
    const std::int64_t x = 1 + static_cast<std::int64_t>(rng() % max_elem);
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
  }
  return IntegerSet(v);
}

CosinePoly random_poly(std::mt19937_64& rng, std::int64_t degree) {
  CosinePoly p = CosinePoly::constant(1);
  for (std::int64_t j = 1; j <= degree; ++j)
    if (rng() % 2) p += c(j, static_cast<std::int64_t>(rng() % 21) - 10, 1 + static_cast<std::int64_t>(rng() % 9));
  return p;
}

const double kSqrt3OverPi = std::sqrt(3.0) / std::numbers::pi;

}  // namespace

TEST_CASE("chi") {
  CHECK(chi(4) == 1);
  CHECK(chi(10) == 1);
  CHECK(chi(6) == 0);
  CHECK(chi(5) == -1);
  for (std::int64_t m = -300; m <= 300; ++m)
    for (std::int64_t n = -300; n <= 300; n += 7) CHECK(chi(m * n) == chi(m) * chi(n));
}

TEST_CASE("Fourier series of f fixes the sign of chi") {
  for (double x : {0.1, 0.25, 0.5}) {
    const double f = (x >= 1.0 / 3 && x < 2.0 / 3) ? 2.0 / 3 : -1.0 / 3;
    CHECK(std::abs(fourier_partial_sum(x, 100000) - f) < 0.05);
  }
}

TEST_CASE("cosine polynomial algebra") {
  const CosinePoly one = CosinePoly::constant(1);
  const CosinePoly cube = (one + c(1)).pow(3) * q(1, 7);
  CHECK(cube == CosinePoly::constant(q(5, 14)) + c(1, 15, 28) + c(2, 3, 14) + c(3, 1, 28));
  // the coefficients 1, 12/7, 6/7, 2/7 belong to (1 + 2c)^3 / 7, which dips below zero
  const CosinePoly displayed = CosinePoly::constant(1) + c(1, 12, 7) + c(2, 6, 7) + c(3, 2, 7);
  CHECK((one + c(1, 2)).pow(3) * q(1, 7) == displayed);
  CHECK(std::abs(displayed.eval(0.5) + 1.0 / 7) < 1e-12);
  CHECK(verify_nonneg(displayed).outcome == NonnegOutcome::negative);
  CHECK(displayed.half_shift() == CosinePoly::constant(1) - c(1, 12, 7) + c(2, 6, 7) - c(3, 2, 7));
  CHECK((one - c(1)) * (one - c(1)) == CosinePoly::constant(q(3, 2)) - c(1, 2) + c(2, 1, 2));
  CHECK((one - c(1)).dilate(5) == one - c(5));
  CHECK(c(3) * c(3) == CosinePoly::constant(q(1, 2)) + c(6, 1, 2));
  CHECK((c(2) - c(2)).coeffs().empty());
  CHECK(cube.degree() == 3);
  CHECK(cube.mean() == q(5, 14));
  CHECK(std::abs(cube.eval(0.0) - 8.0 / 7) < 1e-12);
  CHECK(cosine_poly_from_json(to_json(cube)) == cube);
  CHECK(cosine_poly_from_json(nlohmann::json::parse(to_json(cube).dump())) == cube);

  std::mt19937_64 rng(1);
  for (int it = 0; it < 50; ++it) {
    const auto a = random_poly(rng, 6), b = random_poly(rng, 6);
    for (double x : {0.0, 0.13, 0.377, 0.5, 0.91}) {
      CHECK(std::abs((a * b).eval(x) - a.eval(x) * b.eval(x)) < 1e-9);
      CHECK(std::abs(a.half_shift().eval(x) - a.eval(x + 0.5)) < 1e-9);
      CHECK(std::abs(a.dilate(3).eval(x) - a.eval(3 * x)) < 1e-9);
    }
  }
}

TEST_CASE("pairing examples") {
  const CosinePoly one = CosinePoly::constant(1);
  CHECK(pairing(one, IntegerSet{1, 2, 3}).q == 0);
  CHECK(pairing((one - c(2)) * (one - c(3)), IntegerSet{2, 3}).q == 1);
  CHECK(pairing(one - c(1, 4, 3) + c(2, 2, 3), IntegerSet{1, 5, 7}).q == q(5, 6));
  CHECK(pairing(one - c(1, 4, 3) + c(2, 2, 3), IntegerSet{1, 2, 7}).q == q(1, 2));
}

TEST_CASE("pairing agrees with arc quadrature") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 100; ++it) {
    const auto phi = random_poly(rng, 12);
    const auto a = random_set(rng, 5, 12);
    const long double want = quadrature(phi, a);
    const double got = pairing(phi, a).to_double();
    CHECK(std::abs(static_cast<double>(want) - got) < 1e-10);
  }
}

TEST_CASE("pairing is bilinear and additive") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 100; ++it) {
    const auto p1 = random_poly(rng, 8), p2 = random_poly(rng, 8);
    const auto a = random_set(rng, 4, 10);
    const ExactRational s = q(static_cast<std::int64_t>(rng() % 11) - 5, 3);
    CHECK(pairing(p1 + p2 * s, a).q == pairing(p1, a).q + s * pairing(p2, a).q);
    std::vector<std::int64_t> lo, hi;
    for (auto e : a.elements()) (e % 2 ? lo : hi).push_back(e);
    const ExactRational split = (lo.empty() ? ExactRational(0) : pairing(p1, IntegerSet(lo)).q) +
                                (hi.empty() ? ExactRational(0) : pairing(p1, IntegerSet(hi)).q);
    CHECK(pairing(p1, a).q == split);
  }
}

TEST_CASE("comparison against sqrt(3)/pi") {
  const SqrtPiValue v{q(1)};
  CHECK(compare(q(1, 3), v) < 0);
  CHECK(compare(q(56, 100), v) > 0);
  CHECK(compare(q(55, 100), v) < 0);
  CHECK(compare(q(0), SqrtPiValue{q(0)}) == 0);
  CHECK(std::abs(v.to_double() - kSqrt3OverPi) < 1e-15);
  CHECK(v.decimal(10).rfind("0.5513288954", 0) == 0);
  // sqrt(3)/pi = 0.55132889542179204...
  CHECK(compare(q(551328895421792LL, 1000000000000000LL), v) < 0);
  CHECK(compare(q(551328895421793LL, 1000000000000000LL), v) > 0);
}

TEST_CASE("nonnegativity") {
  const CosinePoly one = CosinePoly::constant(1);
  CHECK(verify_nonneg(NonnegPoly::one_plus_cos(1)).outcome == NonnegOutcome::nonnegative);
  CHECK(verify_nonneg(NonnegPoly::one_plus_cos(1)).method.rfind("structural", 0) == 0);
  CHECK(verify_nonneg(one - c(1, 2)).outcome == NonnegOutcome::negative);
  CHECK(verify_nonneg(testfn::product_of_dips(2, 3)).outcome == NonnegOutcome::nonnegative);
  CHECK(verify_nonneg(one + c(1, 1, 2)).outcome == NonnegOutcome::nonnegative);
  // touches zero: the grid method must not claim it
  CHECK(verify_nonneg(one + c(1)).outcome != NonnegOutcome::negative);
  CHECK(verify_nonneg(one + c(1)).outcome != NonnegOutcome::nonnegative);

  CHECK(testfn::quadratic_dip().poly() == one - c(1, 4, 3) + c(2, 2, 3));
  CHECK(testfn::cubic_dip().poly() == one - c(1, 3, 2) + c(2, 3, 5) - c(3, 1, 10));
  CHECK(testfn::product_of_dips(2, 3).poly() == (one - c(2)) * (one - c(3)));
  CHECK(testfn::cubic_dip_pair(5, 7).poly() ==
        testfn::cubic_dip().poly().dilate(5) * testfn::cubic_dip().poly().dilate(7));
  // 3 * 2 = 2 * 3 shifts mass to the constant term; the pair is rescaled
  const auto tied = testfn::cubic_dip().poly().dilate(2) * testfn::cubic_dip().poly().dilate(3);
  CHECK(tied.mean() != 1);
  CHECK(testfn::cubic_dip_pair(2, 3).poly() == tied * (1 / tied.mean()));
  for (const auto& p : {testfn::quadratic_dip(3), testfn::cubic_dip(), testfn::cubic_dip_pair(2, 5)}) {
    CHECK(p.poly().mean() == 1);
    CHECK(verify_nonneg(p.poly()).outcome != NonnegOutcome::negative);
  }
  CHECK(testfn::smallest_non_multiple_pair(IntegerSet{2, 4, 7}).v == 7);
  CHECK_THROWS(testfn::smallest_non_multiple_pair(IntegerSet{2, 4}));
}

TEST_CASE("certificates") {
  const auto cert = certify_lower_bound(IntegerSet{2, 3}, testfn::product_of_dips(2, 3));
  CHECK(cert.value.q == 1);
  CHECK(compare(q(1, 3), cert.value) < 0);
  CHECK(compare(max_fA(IntegerSet{2, 3}).m, cert.value) >= 0);
  CHECK(certify_lower_bound(IntegerSet{4, 9}, NonnegPoly::constant(1)).value.q == 0);

  const auto dil = certify_lower_bound(IntegerSet{1, 2, 3, 6, 7}, testfn::quadratic_dip(7));
  CHECK(dil.value.q == (q(5, 3) + q(1, 7)) / 2);
  CHECK(compare(q(1, 3), dil.value) < 0);
  CHECK(compare(max_fA(IntegerSet{1, 2, 3, 6, 7}).m, dil.value) >= 0);

  CHECK_THROWS_AS(certify_lower_bound(IntegerSet{1, 2}, CosinePoly::constant(1) - c(1, 2)), CertificationError);
  CHECK_THROWS(certify_lower_bound(IntegerSet{1, 2}, CosinePoly::constant(2)));

  const auto j = to_json(cert);
  for (const char* key : {"set", "phi_coeffs", "q_num", "q_den", "bound_decimal", "method"}) CHECK(j.contains(key));
  CHECK(j["q_num"] == 1);
  CHECK(j["q_den"] == 1);
}

TEST_CASE("certificate soundness on random sets") {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 150; ++it) {
    const auto a = random_set(rng, 7, 40);
    std::vector<NonnegPoly> tests{testfn::quadratic_dip(a.elements().front()), testfn::cubic_dip()};
    bool has_pair = false;
    for (auto e : a.elements()) has_pair = has_pair || e % a.elements().front() != 0;
    if (has_pair) {
      const auto uv = testfn::smallest_non_multiple_pair(a);
      tests.push_back(testfn::product_of_dips(uv.u, uv.v));
      tests.push_back(testfn::cubic_dip_pair(uv.u, uv.v));
    }
    const ExactRational m = max_fA(a).m;
    for (const auto& p : tests) CHECK(compare(m, certify_lower_bound(a, p).value) >= 0);
  }
}

TEST_CASE("closed-form identities") {
  std::mt19937_64 rng(8);
  int count41 = 0;
  while (count41 < 100) {
    auto a = random_set(rng, 6, 40);
    if (a.contains(1) || a.gcd() != 1) continue;
    bool pair = false;
    for (auto e : a.elements()) pair = pair || e % a.elements().front() != 0;
    if (!pair) continue;
    ++count41;
    const auto uv = testfn::smallest_non_multiple_pair(a);
    std::vector<std::int64_t> v(a.elements().begin(), a.elements().end());
    CHECK(pairing(testfn::product_of_dips(uv.u, uv.v).poly(), a).q == closed::product_dip_q(v, uv.u, uv.v));
  }
  for (int it = 0; it < 100; ++it) {
    auto a = random_set(rng, 6, 40);
    std::vector<std::int64_t> v(a.elements().begin(), a.elements().end());
    if (!a.contains(1)) v.push_back(1);
    CHECK(pairing(testfn::quadratic_dip().poly(), IntegerSet(v)).q == closed::quadratic_dip_q(v));
  }
  int count42 = 0;
  while (count42 < 100) {
    const std::int64_t vv = 3 * (1 + static_cast<std::int64_t>(rng() % 40));
    const std::int64_t u = 4 + static_cast<std::int64_t>(rng() % 200);
    if (u % 3 == 0) continue;
    ++count42;
    CHECK(pairing(testfn::quadratic_dip(u).poly(), IntegerSet{1, 2, u, vv, 2 * vv}).q ==
          closed::dilated_quadratic_q(u));
  }
  for (int it = 0; it < 100; ++it) {
    const auto inst = closed::random_size8(rng);
    CHECK(pairing(testfn::product_of_dips(1, inst.v).poly(), IntegerSet(inst.set)).q ==
          closed::size8_q(inst.u, inst.v));
  }
}

TEST_CASE("size-8 error term can exceed one half") {
  // u = v - 1 contributes chi(1)/1 to the error term
  CHECK(closed::size8_error(5, 6) == 1);
  const IntegerSet a{1, 2, 5, 10, 6, 12, 13, 14};
  const auto v = pairing(testfn::product_of_dips(1, 6).poly(), a);
  CHECK(v.q == closed::size8_q(5, 6));
  CHECK(compare(q(1, 3), v) < 0);
}
