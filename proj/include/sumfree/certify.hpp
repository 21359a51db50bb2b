// certify.hpp
//
// Lower-bound certificates for m_A. A nonnegative test function phi with mean
// 1 gives m_A >= int phi f_A. For a finite cosine series phi this pairing is
// a rational multiple of sqrt(3)/pi, because the cosine coefficients of f are
// -sqrt(3) chi(n) / (pi n).

#pragma once

#include "sumfree/rational.hpp"
#include "sumfree/step.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace sumfree {

int chi(std::int64_t n);

// phi(x) = sum_j b_j cos(2 pi j x), j >= 0, finitely many nonzero b_j.
class CosinePoly {
 public:
  CosinePoly() = default;
  static CosinePoly constant(const ExactRational& c);
  // coeff * cos(2 pi j x)
  static CosinePoly term(std::int64_t j, const ExactRational& coeff);

  const std::map<std::int64_t, ExactRational>& coeffs() const { return coeffs_; }
  ExactRational coefficient(std::int64_t j) const;
  ExactRational mean() const { return coefficient(0); }
  std::int64_t degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

  CosinePoly dilate(std::int64_t u) const;  // phi(u x)
  CosinePoly half_shift() const;            // phi(x + 1/2)
  double eval(double x) const;
  // sum_j j |b_j|, so the Lipschitz constant is 2 pi times this.
  double weighted_l1() const;

  CosinePoly& operator+=(const CosinePoly& o);
  CosinePoly& operator-=(const CosinePoly& o);
  CosinePoly& operator*=(const ExactRational& s);

  friend CosinePoly operator+(CosinePoly a, const CosinePoly& b) { return a += b; }
  friend CosinePoly operator-(CosinePoly a, const CosinePoly& b) { return a -= b; }
  friend CosinePoly operator*(CosinePoly a, const ExactRational& s) { return a *= s; }
  friend CosinePoly operator*(const ExactRational& s, CosinePoly a) { return a *= s; }
  // Uses c(ux) c(vx) = c((u+v)x)/2 + c((u-v)x)/2.
  friend CosinePoly operator*(const CosinePoly& a, const CosinePoly& b);
  CosinePoly pow(unsigned e) const;

  friend bool operator==(const CosinePoly&, const CosinePoly&) = default;

 private:
  void add(std::int64_t j, const ExactRational& c);
  std::map<std::int64_t, ExactRational> coeffs_;
};

nlohmann::json to_json(const CosinePoly& p);
CosinePoly cosine_poly_from_json(const nlohmann::json& j);

// A cosine polynomial that is nonnegative by construction: built from
// 1 +- c(ux), squares and nonnegative constants using products, sums,
// positive scaling, dilation and half-shifts.
class NonnegPoly {
 public:
  static NonnegPoly one_plus_cos(std::int64_t u);
  static NonnegPoly one_minus_cos(std::int64_t u);
  static NonnegPoly square(const CosinePoly& p, const std::string& label);
  static NonnegPoly constant(const ExactRational& c);

  const CosinePoly& poly() const { return poly_; }
  const std::string& derivation() const { return derivation_; }

  NonnegPoly dilate(std::int64_t u) const;
  NonnegPoly half_shift() const;
  NonnegPoly pow(unsigned e) const;
  NonnegPoly scaled(const ExactRational& s) const;  // s must be >= 0

  friend NonnegPoly operator*(const NonnegPoly& a, const NonnegPoly& b);
  friend NonnegPoly operator+(const NonnegPoly& a, const NonnegPoly& b);

 private:
  NonnegPoly(CosinePoly p, std::string d) : poly_(std::move(p)), derivation_(std::move(d)) {}
  CosinePoly poly_;
  std::string derivation_;
};

// The real number q * sqrt(3) / pi.
struct SqrtPiValue {
  ExactRational q;

  double to_double() const;
  // Decimal digits of the value, correct to the printed precision.
  std::string decimal(int digits = 20) const;

  friend bool operator==(const SqrtPiValue&, const SqrtPiValue&) = default;
  friend SqrtPiValue operator+(const SqrtPiValue& a, const SqrtPiValue& b) { return {a.q + b.q}; }
};

// Sign of r - v, decided by interval evaluation of sqrt(3)/pi with MPFR at
// increasing precision. Exact: sqrt(3)/pi is irrational.
int compare(const ExactRational& r, const SqrtPiValue& v);

// int_0^1 phi(x) f_A(x) dx.
SqrtPiValue pairing(const CosinePoly& phi, const IntegerSet& a);

enum class NonnegOutcome { nonnegative, negative, indeterminate };

struct NonnegCheck {
  NonnegOutcome outcome = NonnegOutcome::indeterminate;
  std::string method;       // "structural" or "grid"
  double min_value = 0;     // smallest grid value seen (grid method)
  double margin = 0;        // certified lower bound on min phi
  double lipschitz = 0;
  std::int64_t grid = 0;
};

struct NonnegOptions {
  std::int64_t max_work = 200'000'000;  // grid points times nonzero terms
};

// Grid plus Lipschitz bound. Never reports nonnegative unless every point of
// the circle is covered by the bound; near-zero minima come back
// indeterminate.
NonnegCheck verify_nonneg(const CosinePoly& phi, const NonnegOptions& opts = {});
NonnegCheck verify_nonneg(const NonnegPoly& phi);

struct Certificate {
  IntegerSet set;
  CosinePoly phi;
  SqrtPiValue value;
  std::string method;
  double nonneg_margin = 0;
};

class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requires mean 1. Guarantees m_A >= value.
Certificate certify_lower_bound(const IntegerSet& a, const NonnegPoly& phi);
Certificate certify_lower_bound(const IntegerSet& a, const CosinePoly& phi,
                                const NonnegOptions& opts = {});

nlohmann::json to_json(const Certificate& c);

// Partial Fourier sum (-sqrt(3)/pi) sum_{n<=terms} chi(n)/n cos(2 pi n x) of f.
double fourier_partial_sum(double x, std::int64_t terms);

// Test functions from the classical lower-bound arguments.
namespace testfn {

// (1 - c(ux))(1 - c(vx))
NonnegPoly product_of_dips(std::int64_t u, std::int64_t v);
// 1 - (4/3)c(ux) + (2/3)c(2ux) = (1/3)(1 - 2c(ux))^2
NonnegPoly quadratic_dip(std::int64_t u = 1);
// (2/5)(1 + c(x + 1/2))^3 = 1 - (3/2)c(x) + (3/5)c(2x) - (1/10)c(3x)
NonnegPoly cubic_dip();
// cubic_dip(u x) * cubic_dip(v x), rescaled to mean 1
NonnegPoly cubic_dip_pair(std::int64_t u, std::int64_t v);

struct DipPair {
  std::int64_t u;
  std::int64_t v;
};
// u = min A, v = least element not divisible by u. Requires such v to exist.
DipPair smallest_non_multiple_pair(const IntegerSet& a);

}  // namespace testfn

}  // namespace sumfree
