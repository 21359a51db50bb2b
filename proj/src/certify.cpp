// certify.cpp

#include "sumfree/certify.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sumfree {

int chi(std::int64_t n) { return chi3(n); }

// --- CosinePoly -------------------------------------------------------------

CosinePoly CosinePoly::constant(const ExactRational& c) { return term(0, c); }

CosinePoly CosinePoly::term(std::int64_t j, const ExactRational& coeff) {
  CosinePoly p;
  p.add(j < 0 ? -j : j, coeff);
  return p;
}

void CosinePoly::add(std::int64_t j, const ExactRational& c) {
  if (c == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(j, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

ExactRational CosinePoly::coefficient(std::int64_t j) const {
  auto it = coeffs_.find(j);
  return it == coeffs_.end() ? ExactRational(0) : it->second;
}

CosinePoly CosinePoly::dilate(std::int64_t u) const {
  if (u < 1) throw std::invalid_argument("dilation must be positive");
  CosinePoly out;
  for (const auto& [j, b] : coeffs_) out.coeffs_.emplace(j * u, b);
  return out;
}

CosinePoly CosinePoly::half_shift() const {
  CosinePoly out(*this);
  for (auto& [j, b] : out.coeffs_) {
    if (j % 2 != 0) b = -b;
  }
  return out;
}

double CosinePoly::eval(double x) const {
  double s = 0;
  for (const auto& [j, b] : coeffs_) {
    double t = static_cast<double>(j) * x;
    t -= std::floor(t);
    s += b.get_d() * std::cos(2 * std::numbers::pi * t);
  }
  return s;
}

double CosinePoly::weighted_l1() const {
  double s = 0;
  for (const auto& [j, b] : coeffs_) s += static_cast<double>(j) * std::abs(b.get_d());
  return s;
}

CosinePoly& CosinePoly::operator+=(const CosinePoly& o) {
  for (const auto& [j, b] : o.coeffs_) add(j, b);
  return *this;
}

CosinePoly& CosinePoly::operator-=(const CosinePoly& o) {
  for (const auto& [j, b] : o.coeffs_) add(j, -b);
  return *this;
}

CosinePoly& CosinePoly::operator*=(const ExactRational& s) {
  if (s == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [j, b] : coeffs_) b *= s;
  return *this;
}

CosinePoly operator*(const CosinePoly& a, const CosinePoly& b) {
  CosinePoly out;
  const ExactRational half = make_rational(1, 2);
  for (const auto& [u, bu] : a.coeffs_) {
    for (const auto& [v, bv] : b.coeffs_) {
      ExactRational c = bu * bv * half;
      out.add(u + v, c);
      out.add(u > v ? u - v : v - u, c);
    }
  }
  return out;
}

CosinePoly CosinePoly::pow(unsigned e) const {
  CosinePoly out = constant(1);
  for (unsigned i = 0; i < e; ++i) out = out * *this;
  return out;
}

nlohmann::json to_json(const CosinePoly& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [j, b] : p.coeffs()) out.push_back({j, to_string(b)});
  return out;
}

CosinePoly cosine_poly_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("cosine poly json must be an array");
  CosinePoly p;
  for (const auto& entry : j) {
    if (!entry.is_array() || entry.size() != 2) {
      throw std::invalid_argument("cosine poly entry must be [j, \"p/q\"]");
    }
    std::int64_t idx = entry[0].get<std::int64_t>();
    if (idx < 0) throw std::invalid_argument("negative frequency");
    p += CosinePoly::term(idx, parse_rational(entry[1].get<std::string>()));
  }
  return p;
}

// --- NonnegPoly -------------------------------------------------------------

NonnegPoly NonnegPoly::one_plus_cos(std::int64_t u) {
  return {CosinePoly::constant(1) + CosinePoly::term(u, 1), "(1+c(" + std::to_string(u) + "x))"};
}

NonnegPoly NonnegPoly::one_minus_cos(std::int64_t u) {
  return {CosinePoly::constant(1) - CosinePoly::term(u, 1), "(1-c(" + std::to_string(u) + "x))"};
}

NonnegPoly NonnegPoly::square(const CosinePoly& p, const std::string& label) {
  return {p * p, "(" + label + ")^2"};
}

NonnegPoly NonnegPoly::constant(const ExactRational& c) {
  if (c < 0) throw std::invalid_argument("nonnegative constant required");
  return {CosinePoly::constant(c), to_string(c)};
}

NonnegPoly NonnegPoly::dilate(std::int64_t u) const {
  return {poly_.dilate(u), derivation_ + "[x->" + std::to_string(u) + "x]"};
}

NonnegPoly NonnegPoly::half_shift() const { return {poly_.half_shift(), derivation_ + "[x->x+1/2]"}; }

NonnegPoly NonnegPoly::pow(unsigned e) const {
  return {poly_.pow(e), derivation_ + "^" + std::to_string(e)};
}

NonnegPoly NonnegPoly::scaled(const ExactRational& s) const {
  if (s < 0) throw std::invalid_argument("negative scale breaks nonnegativity");
  return {poly_ * s, to_string(s) + "*" + derivation_};
}

NonnegPoly operator*(const NonnegPoly& a, const NonnegPoly& b) {
  return {a.poly_ * b.poly_, a.derivation_ + "*" + b.derivation_};
}

NonnegPoly operator+(const NonnegPoly& a, const NonnegPoly& b) {
  return {a.poly_ + b.poly_, a.derivation_ + "+" + b.derivation_};
}

// --- SqrtPiValue ------------------------------------------------------------

namespace {

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

// Encloses q sqrt(3)/pi in [lo, hi].
void enclose(const ExactRational& q, mpfr_prec_t prec, Mpfr& lo, Mpfr& hi) {
  Mpfr s(prec), p(prec);
  // lower: sqrt3 down / pi up; upper: sqrt3 up / pi down
  mpfr_sqrt_ui(s.get(), 3, MPFR_RNDD);
  mpfr_const_pi(p.get(), MPFR_RNDU);
  mpfr_div(lo.get(), s.get(), p.get(), MPFR_RNDD);
  mpfr_sqrt_ui(s.get(), 3, MPFR_RNDU);
  mpfr_const_pi(p.get(), MPFR_RNDD);
  mpfr_div(hi.get(), s.get(), p.get(), MPFR_RNDU);
  if (q >= 0) {
    mpfr_mul_q(lo.get(), lo.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(hi.get(), hi.get(), q.get_mpq_t(), MPFR_RNDU);
  } else {
    Mpfr t(prec);
    mpfr_mul_q(t.get(), hi.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(hi.get(), lo.get(), q.get_mpq_t(), MPFR_RNDU);
    mpfr_set(lo.get(), t.get(), MPFR_RNDD);
  }
}

}  // namespace

double SqrtPiValue::to_double() const {
  return q.get_d() * std::sqrt(3.0) / std::numbers::pi;
}

std::string SqrtPiValue::decimal(int digits) const {
  Mpfr lo(256), hi(256);
  enclose(q, 256, lo, hi);
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, lo.get());
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

int compare(const ExactRational& r, const SqrtPiValue& v) {
  if (v.q == 0) return sgn(r);
  for (mpfr_prec_t prec = 128; prec <= (1 << 16); prec *= 2) {
    Mpfr lo(prec), hi(prec);
    enclose(v.q, prec, lo, hi);
    if (mpfr_cmp_q(lo.get(), r.get_mpq_t()) > 0) return -1;
    if (mpfr_cmp_q(hi.get(), r.get_mpq_t()) < 0) return 1;
  }
  throw std::runtime_error("comparison against q*sqrt(3)/pi did not resolve");
}

// --- pairing ----------------------------------------------------------------

SqrtPiValue pairing(const CosinePoly& phi, const IntegerSet& a) {
  ExactRational sum(0);
  for (const auto& [j, b] : phi.coeffs()) {
    if (j == 0) continue;
    for (std::int64_t e : a.elements()) {
      if (e > j) break;
      if (j % e != 0) continue;
      std::int64_t n = j / e;
      int c = chi(n);
      if (c != 0) sum += b * c / ExactRational(n);
    }
  }
  return {sum * make_rational(-1, 2)};
}

// --- nonnegativity ----------------------------------------------------------

NonnegCheck verify_nonneg(const CosinePoly& phi, const NonnegOptions& opts) {
  NonnegCheck out;
  out.method = "grid";
  const double two_pi = 2 * std::numbers::pi;
  out.lipschitz = two_pi * phi.weighted_l1();
  std::vector<std::pair<std::int64_t, double>> terms;
  double abs_sum = 0;
  for (const auto& [j, b] : phi.coeffs()) {
    terms.emplace_back(j, b.get_d());
    abs_sum += std::abs(b.get_d());
  }
  if (terms.empty()) {
    out.outcome = NonnegOutcome::nonnegative;
    return out;
  }
  const double rounding = 1e-12 * (1 + abs_sum);
  const std::int64_t nnz = static_cast<std::int64_t>(terms.size());
  std::int64_t grid = std::max<std::int64_t>(64, 8 * (phi.degree() + 1));
  while (true) {
    double min_value = INFINITY;
    for (std::int64_t i = 0; i < grid; ++i) {
      double s = 0;
      for (auto [j, b] : terms) {
        std::int64_t r = static_cast<std::int64_t>((static_cast<__int128>(j) * i) % grid);
        s += b * std::cos(two_pi * static_cast<double>(r) / static_cast<double>(grid));
      }
      min_value = std::min(min_value, s);
    }
    out.grid = grid;
    out.min_value = min_value;
    if (min_value < -rounding) {
      out.outcome = NonnegOutcome::negative;
      out.margin = min_value;
      return out;
    }
    double slack = out.lipschitz / static_cast<double>(grid) / 2 + rounding;
    if (min_value - slack >= 0) {
      out.outcome = NonnegOutcome::nonnegative;
      out.margin = min_value - slack;
      return out;
    }
    if (grid * 4 * nnz > opts.max_work) {
      out.outcome = NonnegOutcome::indeterminate;
      out.margin = min_value - slack;
      return out;
    }
    grid *= 4;
  }
}

NonnegCheck verify_nonneg(const NonnegPoly& phi) {
  NonnegCheck out;
  out.outcome = NonnegOutcome::nonnegative;
  out.method = "structural: " + phi.derivation();
  out.lipschitz = 2 * std::numbers::pi * phi.poly().weighted_l1();
  return out;
}

// --- certificates -----------------------------------------------------------

namespace {

Certificate make_certificate(const IntegerSet& a, const CosinePoly& phi, const NonnegCheck& check) {
  if (phi.mean() != 1) throw std::invalid_argument("test function must have mean 1");
  if (check.outcome != NonnegOutcome::nonnegative) {
    throw CertificationError(check.outcome == NonnegOutcome::negative
                                 ? "test function takes negative values"
                                 : "nonnegativity indeterminate, refine grid");
  }
  return {a, phi, pairing(phi, a), check.method, check.margin};
}

}  // namespace

Certificate certify_lower_bound(const IntegerSet& a, const NonnegPoly& phi) {
  return make_certificate(a, phi.poly(), verify_nonneg(phi));
}

Certificate certify_lower_bound(const IntegerSet& a, const CosinePoly& phi, const NonnegOptions& opts) {
  if (phi.mean() != 1) throw std::invalid_argument("test function must have mean 1");
  return make_certificate(a, phi, verify_nonneg(phi, opts));
}

nlohmann::json to_json(const Certificate& c) {
  auto big = [](const BigInt& z) -> nlohmann::json {
    if (mpz_fits_slong_p(z.get_mpz_t())) return z.get_si();
    return z.get_str();
  };
  std::vector<std::int64_t> set(c.set.elements().begin(), c.set.elements().end());
  return {{"set", set},
          {"phi_coeffs", to_json(c.phi)},
          {"q_num", big(c.value.q.get_num())},
          {"q_den", big(c.value.q.get_den())},
          {"bound_decimal", c.value.decimal()},
          {"method", c.method}};
}

double fourier_partial_sum(double x, std::int64_t terms) {
  double s = 0;
  for (std::int64_t n = 1; n <= terms; ++n) {
    int c = chi(n);
    if (c == 0) continue;
    double t = static_cast<double>(n) * x;
    t -= std::floor(t);
    s += c * std::cos(2 * std::numbers::pi * t) / static_cast<double>(n);
  }
  return -std::sqrt(3.0) / std::numbers::pi * s;
}

// --- test functions ---------------------------------------------------------

namespace testfn {

NonnegPoly product_of_dips(std::int64_t u, std::int64_t v) {
  return NonnegPoly::one_minus_cos(u) * NonnegPoly::one_minus_cos(v);
}

NonnegPoly quadratic_dip(std::int64_t u) {
  CosinePoly base = CosinePoly::constant(1) - CosinePoly::term(1, 2);
  return NonnegPoly::square(base, "1-2c(x)").scaled(make_rational(1, 3)).dilate(u);
}

NonnegPoly cubic_dip() {
  // (1 + c)^3 has mean 5/2
  return NonnegPoly::one_plus_cos(1).pow(3).scaled(make_rational(2, 5)).half_shift();
}

NonnegPoly cubic_dip_pair(std::int64_t u, std::int64_t v) {
  NonnegPoly base = cubic_dip();
  NonnegPoly p = base.dilate(u) * base.dilate(v);
  // mean is 1 unless j u = k v for some j, k in {1, 2, 3}
  return p.scaled(1 / p.poly().mean());
}

DipPair smallest_non_multiple_pair(const IntegerSet& a) {
  if (a.empty()) throw std::invalid_argument("empty set");
  std::int64_t u = a.elements().front();
  for (std::int64_t e : a.elements()) {
    if (e % u != 0) return {u, e};
  }
  throw std::invalid_argument("every element is a multiple of the smallest one");
}

}  // namespace testfn

}  // namespace sumfree
