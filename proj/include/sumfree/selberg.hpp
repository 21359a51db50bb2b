// selberg.hpp
//
// Selberg's minorant of the middle-third indicator, built from the Fejer
// kernel and Vaaler's approximation to the sawtooth, together with the
// numerical machinery that consumes it: certified global extrema of
// trigonometric polynomials, maxima of dilated sums, 2k-th moments and the
// Bohr-set superlevel witness.

#pragma once

#include "sumfree/circle.hpp"
#include "sumfree/rational.hpp"
#include "sumfree/step.hpp"

#include <json.hpp>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sumfree {

// P(x) = sum_k cos_coeffs[k] cos(2 pi k x) + sin_coeffs[k] sin(2 pi k x).
class TrigPoly {
 public:
  TrigPoly() = default;
  explicit TrigPoly(std::size_t degree) : cos_(degree + 1, 0.0), sin_(degree + 1, 0.0) {}

  std::size_t degree() const { return cos_.empty() ? 0 : cos_.size() - 1; }
  double cos_coeff(std::size_t k) const { return k < cos_.size() ? cos_[k] : 0.0; }
  double sin_coeff(std::size_t k) const { return k < sin_.size() ? sin_[k] : 0.0; }
  void set_cos(std::size_t k, double v);
  void set_sin(std::size_t k, double v);

  double eval(double x) const;
  // 2 pi sum_k k (|a_k| + |b_k|)
  double lipschitz() const;
  // (2 pi)^2 sum_k k^2 (|a_k| + |b_k|), a bound on |P''|
  double curvature() const;
  double abs_coeff_sum() const;
  // Largest k with |a_k| or |b_k| above tol.
  std::size_t support(double tol) const;
  // Drops frequencies above k.
  TrigPoly truncated(std::size_t k) const;

  TrigPoly translated(double t) const;  // P(x - t)
  TrigPoly reflected() const;           // P(-x)
  TrigPoly times_sin(std::size_t m) const;  // P(x) sin(2 pi m x)

  TrigPoly& operator+=(const TrigPoly& o);
  TrigPoly& operator*=(double s);
  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, TrigPoly b) { return a += (b *= -1.0); }
  friend TrigPoly operator*(double s, TrigPoly a) { return a *= s; }

 private:
  void grow(std::size_t degree);
  std::vector<double> cos_;
  std::vector<double> sin_;
};

// Delta_K(x) = sum_{|k| <= K} (1 - |k|/K) e(kx)
TrigPoly fejer(std::int64_t k);
// Vaaler's trigonometric approximation to psi(x) = frac(x) - 1/2.
TrigPoly vaaler(std::int64_t k);
// B_K = V_K + Delta_{K+1} / (2(K+1)), a majorant of psi.
TrigPoly sawtooth_majorant(std::int64_t k);

struct ExtremumResult {
  double value = 0;
  double argmax = 0;  // location of the extremum (argmin for minima)
  double certified_radius = 0;
};

struct Extrema {
  ExtremumResult max;
  ExtremumResult min;
};

struct ExtremaOptions {
  double target_radius = 1e-9;
  std::int64_t max_evaluations = 20'000'000;
};

// Dense scan over at least 4(D+1) points, golden-section polishing of the
// best candidates, then branch-and-bound on cells (bounded through both the
// Lipschitz constant and the second-derivative bound) until the certified
// radius drops below the target (or the evaluation budget runs out).
Extrema global_extrema(const TrigPoly& p, const ExtremaOptions& opts = {});

class MinorantError : public std::runtime_error {
 public:
  MinorantError(const std::string& what, double x) : std::runtime_error(what), x_(x) {}
  double x() const { return x_; }

 private:
  double x_;
};

struct SelbergPoly {
  std::int64_t K = 0;
  TrigPoly indicator_form;  // minorant of 1_[1/3,2/3)
  TrigPoly f_form;          // indicator_form - 1/3, a minorant of f
  double m_K = 0;           // -(certified minimum of f_form)
  std::size_t reported_support = 0;
  bool support_deviation = false;  // residues above frequency K
};

struct SelbergOptions {
  std::int64_t validation_grid = 1 << 16;
  double tolerance = 1e-9;
  double truncation = 1e-12;
};

// Throws MinorantError carrying the offending x if f_form > f + tolerance
// anywhere on the validation grid.
SelbergPoly selberg_minorant(std::int64_t k, const SelbergOptions& opts = {});

struct SelbergProperties {
  std::int64_t K = 0;
  std::int64_t grid = 0;
  double max_grid_violation = 0;   // max over grid of f_form - f
  double certified_violation = 0;  // Lipschitz bound on sup(f_form - f)
  double lipschitz_margin = 0;     // L h / 2
  double integral_deficit = 0;     // int (f - f_form)
  double max_sine = 0;
  std::size_t support = 0;
  bool support_deviation = false;
  double sup_norm = 0;
  double m_K = 0;
};

SelbergProperties selberg_properties(const SelbergPoly& s, std::int64_t grid = 1'000'000);
nlohmann::json to_json(const SelbergProperties& p);
nlohmann::json coefficients_json(const SelbergPoly& s);

// x -> sum_{a in A} f_form(a x)
class DilatedSum {
 public:
  DilatedSum(const TrigPoly& base, std::vector<std::int64_t> dilations);
  double eval(double x) const;
  double lipschitz() const;
  double curvature() const;
  std::size_t degree() const;
  double abs_coeff_sum() const;
  const TrigPoly& base() const { return *base_; }
  const std::vector<std::int64_t>& dilations() const { return dilations_; }

 private:
  const TrigPoly* base_;
  std::vector<std::int64_t> dilations_;
};

Extrema global_extrema(const DilatedSum& p, const ExtremaOptions& opts = {});

inline constexpr std::int64_t kMaxDilatedDegree = 1'000'000;

// Certified maximum of sum_{a in A} f_form(a x).
ExtremumResult dilated_sum_max(const IntegerSet& a, const SelbergPoly& s,
                               const ExtremaOptions& opts = {});
ExtremumResult dilated_sum_max(const IntegerSet& a, std::int64_t k);

inline constexpr std::int64_t kMaxQuadratureNodes = std::int64_t{1} << 27;

struct MomentResult {
  double value = 0;
  std::int64_t nodes = 0;
};

// (int (sum_a f_form(a x) + n m_K)^{2k} dx)^{1/(2k)} by the periodic
// trapezoid rule with more nodes than the degree of the integrand, which
// makes it exact up to rounding. nodes = 0 picks the minimum.
MomentResult moment_norm(const IntegerSet& a, const SelbergPoly& s, std::int64_t k,
                         std::int64_t nodes = 0);

struct SuperlevelWitness {
  double theta = 0;
  double max_value = 0;
  ExactRational eps;
  ExactRational bohr_measure;
  ExactRational measure_floor;  // eps^{K n}
  bool measure_bound_holds = false;
  std::size_t samples = 0;
  double worst_drop = 0;
  bool all_pass = false;
};

// theta maximizes sum_a f_form(a x); B is the Bohr set of the frequencies
// a k (a in A, 1 <= k <= K) with radius eps = delta / (C n K). Samples arc
// endpoints and midpoints of B and checks the dilated sum stays within
// delta of its maximum on theta + B.
SuperlevelWitness superlevel_witness(const IntegerSet& a, const SelbergPoly& s,
                                     const ExactRational& delta, const ExactRational& c);

}  // namespace sumfree
