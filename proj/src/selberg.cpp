// selberg.cpp

#include "sumfree/selberg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sumfree {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

double frac_ld(long double t) {
  t -= std::floor(t);
  return static_cast<double>(t);
}

}  // namespace

// --- TrigPoly ---------------------------------------------------------------

void TrigPoly::grow(std::size_t degree) {
  if (cos_.size() < degree + 1) {
    cos_.resize(degree + 1, 0.0);
    sin_.resize(degree + 1, 0.0);
  }
}

void TrigPoly::set_cos(std::size_t k, double v) {
  grow(k);
  cos_[k] = v;
}

void TrigPoly::set_sin(std::size_t k, double v) {
  grow(k);
  sin_[k] = v;
}

double TrigPoly::eval(double x) const {
  if (cos_.empty()) return 0.0;
  const double theta = kTwoPi * frac_ld(x);
  const double c1 = std::cos(theta);
  const double s1 = std::sin(theta);
  double c = 1.0, s = 0.0;
  double total = cos_[0];
  for (std::size_t k = 1; k < cos_.size(); ++k) {
    if (k % 64 == 0) {
      // reseed to keep the rotation error from accumulating
      double t = kTwoPi * frac_ld(static_cast<long double>(k) * frac_ld(x));
      c = std::cos(t);
      s = std::sin(t);
    } else {
      double cn = c * c1 - s * s1;
      s = s * c1 + c * s1;
      c = cn;
    }
    total += cos_[k] * c + sin_[k] * s;
  }
  return total;
}

double TrigPoly::lipschitz() const {
  double s = 0;
  for (std::size_t k = 1; k < cos_.size(); ++k) {
    s += static_cast<double>(k) * (std::abs(cos_[k]) + std::abs(sin_[k]));
  }
  return kTwoPi * s;
}

double TrigPoly::curvature() const {
  double s = 0;
  for (std::size_t k = 1; k < cos_.size(); ++k) {
    s += static_cast<double>(k) * static_cast<double>(k) * (std::abs(cos_[k]) + std::abs(sin_[k]));
  }
  return kTwoPi * kTwoPi * s;
}

double TrigPoly::abs_coeff_sum() const {
  double s = 0;
  for (std::size_t k = 0; k < cos_.size(); ++k) s += std::abs(cos_[k]) + std::abs(sin_[k]);
  return s;
}

std::size_t TrigPoly::support(double tol) const {
  for (std::size_t k = cos_.size(); k-- > 0;) {
    if (std::abs(cos_[k]) > tol || std::abs(sin_[k]) > tol) return k;
  }
  return 0;
}

TrigPoly TrigPoly::truncated(std::size_t k) const {
  TrigPoly out(*this);
  if (out.cos_.size() > k + 1) {
    out.cos_.resize(k + 1);
    out.sin_.resize(k + 1);
  }
  return out;
}

TrigPoly TrigPoly::translated(double t) const {
  TrigPoly out(*this);
  for (std::size_t k = 1; k < cos_.size(); ++k) {
    double angle = kTwoPi * frac_ld(static_cast<long double>(k) * t);
    double ct = std::cos(angle), st = std::sin(angle);
    out.cos_[k] = cos_[k] * ct - sin_[k] * st;
    out.sin_[k] = cos_[k] * st + sin_[k] * ct;
  }
  return out;
}

TrigPoly TrigPoly::reflected() const {
  TrigPoly out(*this);
  for (auto& b : out.sin_) b = -b;
  return out;
}

TrigPoly TrigPoly::times_sin(std::size_t m) const {
  TrigPoly out(degree() + m);
  auto add_sin = [&](std::int64_t f, double v) {
    if (f < 0) {
      f = -f;
      v = -v;
    }
    out.sin_[static_cast<std::size_t>(f)] += v;  // sin(0) contributes nothing
  };
  auto add_cos = [&](std::int64_t f, double v) {
    out.cos_[static_cast<std::size_t>(f < 0 ? -f : f)] += v;
  };
  const auto im = static_cast<std::int64_t>(m);
  for (std::size_t k = 0; k < cos_.size(); ++k) {
    const auto ik = static_cast<std::int64_t>(k);
    // cos(k) sin(m) = (sin(k+m) - sin(k-m)) / 2
    add_sin(ik + im, cos_[k] / 2);
    add_sin(ik - im, -cos_[k] / 2);
    // sin(k) sin(m) = (cos(k-m) - cos(k+m)) / 2
    add_cos(ik - im, sin_[k] / 2);
    add_cos(ik + im, -sin_[k] / 2);
  }
  out.sin_[0] = 0;
  return out;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
  grow(o.degree());
  for (std::size_t k = 0; k < o.cos_.size(); ++k) {
    cos_[k] += o.cos_[k];
    sin_[k] += o.sin_[k];
  }
  return *this;
}

TrigPoly& TrigPoly::operator*=(double s) {
  for (auto& a : cos_) a *= s;
  for (auto& b : sin_) b *= s;
  return *this;
}

// --- kernels ----------------------------------------------------------------

TrigPoly fejer(std::int64_t k) {
  if (k < 1) throw std::invalid_argument("Fejer kernel needs K >= 1");
  TrigPoly p(static_cast<std::size_t>(k - 1));
  p.set_cos(0, 1.0);
  for (std::int64_t j = 1; j < k; ++j) {
    p.set_cos(static_cast<std::size_t>(j), 2.0 * (1.0 - static_cast<double>(j) / static_cast<double>(k)));
  }
  return p;
}

TrigPoly vaaler(std::int64_t k) {
  if (k < 1) throw std::invalid_argument("Vaaler polynomial needs K >= 1");
  const double kp1 = static_cast<double>(k + 1);
  const TrigPoly delta = fejer(k + 1);
  TrigPoly v(static_cast<std::size_t>(k + 1));
  for (std::int64_t j = 1; j <= k; ++j) {
    double w = (static_cast<double>(j) / kp1 - 0.5) / kp1;
    v += w * delta.translated(static_cast<double>(j) / kp1);
  }
  TrigPoly top(static_cast<std::size_t>(k + 1));
  top.set_sin(static_cast<std::size_t>(k + 1), 1.0 / (kTwoPi * kp1));
  v += top;
  v += (-1.0 / kTwoPi) * delta.times_sin(1);
  return v;
}

TrigPoly sawtooth_majorant(std::int64_t k) {
  return vaaler(k) + (1.0 / (2.0 * static_cast<double>(k + 1))) * fejer(k + 1);
}

// --- certified extrema ------------------------------------------------------

namespace {

struct Cell {
  double a, b, fa, fb;
};

std::int64_t scan_points(std::size_t degree) {
  return std::max<std::int64_t>(256, 4 * (static_cast<std::int64_t>(degree) + 1));
}

// vals holds f at i / n0 for i < n0, plus a wrap-around copy of vals[0].
template <typename F>
ExtremumResult maximize(F&& f, std::vector<double> vals, double lipschitz, double curvature, double rounding,
                        const ExtremaOptions& opts) {
  const auto n0 = static_cast<std::int64_t>(vals.size()) - 1;
  std::int64_t evals = n0;

  double best = -INFINITY, best_x = 0;
  auto consider = [&](double x, double v) {
    if (v > best) {
      best = v;
      best_x = x;
    }
  };
  for (std::int64_t i = 0; i < n0; ++i) consider(static_cast<double>(i) / static_cast<double>(n0), vals[static_cast<std::size_t>(i)]);

  // golden-section polish around the strongest grid candidates
  std::vector<std::int64_t> order(static_cast<std::size_t>(n0));
  for (std::int64_t i = 0; i < n0; ++i) order[static_cast<std::size_t>(i)] = i;
  std::size_t top = std::min<std::size_t>(8, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(top), order.end(),
                    [&](auto x, auto y) { return vals[static_cast<std::size_t>(x)] > vals[static_cast<std::size_t>(y)]; });
  const double h0 = 1.0 / static_cast<double>(n0);
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (std::size_t t = 0; t < top; ++t) {
    double lo = static_cast<double>(order[t]) * h0 - h0, hi = lo + 2 * h0;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 60; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = f(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = f(x1);
      }
    }
    evals += 122;
    consider(x1 - std::floor(x1), f1);
    consider(x2 - std::floor(x2), f2);
  }

  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(n0));
  for (std::int64_t i = 0; i < n0; ++i) {
    cells.push_back({static_cast<double>(i) * h0, static_cast<double>(i + 1) * h0,
                     vals[static_cast<std::size_t>(i)], vals[static_cast<std::size_t>(i + 1)]});
  }
  double worst_upper = -INFINITY;
  // first-order bound, or |f''| <= curvature: f <= max(fa, fb) + curvature h^2 / 8
  auto upper = [&](const Cell& c) {
    const double h = c.b - c.a;
    return std::min((c.fa + c.fb) / 2 + lipschitz * h / 2, std::max(c.fa, c.fb) + curvature * h * h / 8);
  };
  std::vector<Cell> next;
  while (!cells.empty()) {
    next.clear();
    bool out_of_budget = evals >= opts.max_evaluations;
    for (const Cell& c : cells) {
      double u = upper(c);
      if (u <= best + opts.target_radius || out_of_budget || c.b - c.a < 1e-15) {
        worst_upper = std::max(worst_upper, u);
        continue;
      }
      double m = (c.a + c.b) / 2;
      double fm = f(m);
      ++evals;
      consider(m, fm);
      next.push_back({c.a, m, c.fa, fm});
      next.push_back({m, c.b, fm, c.fb});
    }
    cells.swap(next);
  }
  ExtremumResult r;
  r.value = best;
  r.argmax = best_x;
  r.certified_radius = std::max(0.0, worst_upper - best) + rounding;
  return r;
}

std::vector<double> sample(const TrigPoly& p, std::int64_t n0) {
  bool even = true;
  for (std::size_t k = 0; k <= p.degree(); ++k) even = even && p.sin_coeff(k) == 0.0;
  std::vector<double> v(static_cast<std::size_t>(n0) + 1);
  const std::int64_t stop = even ? n0 / 2 + 1 : n0;
  const std::size_t deg = p.degree();
  const double step = kTwoPi / static_cast<double>(n0);
  // four interleaved points keep the rotation recurrences from serializing
  constexpr int kLanes = 4;
  const double wc = std::cos(step * kLanes), ws = std::sin(step * kLanes);
  double c1[kLanes] = {}, s1[kLanes] = {};
  for (std::int64_t i0 = 0; i0 < stop; i0 += kLanes) {
    double c[kLanes], sn[kLanes], total[kLanes];
    for (int l = 0; l < kLanes; ++l) {
      if (i0 % 256 == 0) {
        const double t = step * static_cast<double>(i0 + l);
        c1[l] = std::cos(t);
        s1[l] = std::sin(t);
      } else {
        const double cn = c1[l] * wc - s1[l] * ws;
        s1[l] = s1[l] * wc + c1[l] * ws;
        c1[l] = cn;
      }
      c[l] = 1;
      sn[l] = 0;
      total[l] = p.cos_coeff(0);
    }
    for (std::size_t k = 1; k <= deg; ++k) {
      const double a = p.cos_coeff(k), b = p.sin_coeff(k);
      if (k % 64 == 0) {
        for (int l = 0; l < kLanes; ++l) {
          const std::int64_t r = static_cast<std::int64_t>((static_cast<__int128>(k) * (i0 + l)) % n0);
          const double t = step * static_cast<double>(r);
          c[l] = std::cos(t);
          sn[l] = std::sin(t);
        }
      } else {
        for (int l = 0; l < kLanes; ++l) {
          const double cn = c[l] * c1[l] - sn[l] * s1[l];
          sn[l] = sn[l] * c1[l] + c[l] * s1[l];
          c[l] = cn;
        }
      }
      for (int l = 0; l < kLanes; ++l) total[l] += a * c[l] + b * sn[l];
    }
    for (int l = 0; l < kLanes && i0 + l < stop; ++l) v[static_cast<std::size_t>(i0 + l)] = total[l];
  }
  if (even)
    for (std::int64_t i = stop; i < n0; ++i) v[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(n0 - i)];
  v.back() = v.front();
  return v;
}

// a i / n0 lands on the grid again, so one table of the base serves every dilation.
std::vector<double> sample(const DilatedSum& p, std::int64_t n0) {
  const std::vector<double> table = sample(p.base(), n0);
  std::vector<double> v(static_cast<std::size_t>(n0) + 1, 0.0);
  for (std::int64_t a : p.dilations()) {
    const std::int64_t step = a % n0;
    std::int64_t r = 0;
    for (std::int64_t i = 0; i < n0; ++i) {
      v[static_cast<std::size_t>(i)] += table[static_cast<std::size_t>(r)];
      r += step;
      if (r >= n0) r -= n0;
    }
  }
  v.back() = v.front();
  return v;
}

template <typename Poly>
ExtremumResult max_of(const Poly& p, std::vector<double> vals, double sign, const ExtremaOptions& opts) {
  const double rounding = 1e-12 * (1 + p.abs_coeff_sum());
  if (sign < 0)
    for (double& v : vals) v = -v;
  return maximize([&](double x) { return sign * p.eval(x); }, std::move(vals), p.lipschitz(), p.curvature(),
                  rounding, opts);
}

template <typename Poly>
Extrema extrema_of(const Poly& p, const ExtremaOptions& opts) {
  const std::vector<double> vals = sample(p, scan_points(p.degree()));
  Extrema e;
  e.max = max_of(p, vals, 1.0, opts);
  e.min = max_of(p, vals, -1.0, opts);
  e.min.value = -e.min.value;
  return e;
}

}  // namespace

Extrema global_extrema(const TrigPoly& p, const ExtremaOptions& opts) { return extrema_of(p, opts); }

Extrema global_extrema(const DilatedSum& p, const ExtremaOptions& opts) { return extrema_of(p, opts); }

// --- Selberg minorant -------------------------------------------------------

namespace {

double f_value(double x) {
  x -= std::floor(x);
  return (x >= 1.0 / 3.0 && x < 2.0 / 3.0) ? 2.0 / 3.0 : -1.0 / 3.0;
}

}  // namespace

SelbergPoly selberg_minorant(std::int64_t k, const SelbergOptions& opts) {
  if (k < 1) throw std::invalid_argument("Selberg minorant needs K >= 1");
  const TrigPoly b = sawtooth_majorant(k);
  TrigPoly indicator(0);
  indicator.set_cos(0, 1.0 / 3.0);
  indicator = indicator - b.reflected().translated(2.0 / 3.0) - b.translated(1.0 / 3.0);

  SelbergPoly s;
  s.K = k;
  s.reported_support = indicator.support(opts.truncation);
  s.support_deviation = s.reported_support > static_cast<std::size_t>(k);
  if (!s.support_deviation) indicator = indicator.truncated(static_cast<std::size_t>(k));
  s.indicator_form = indicator;
  s.f_form = indicator;
  s.f_form.set_cos(0, indicator.cos_coeff(0) - 1.0 / 3.0);

  std::vector<double> probes = {0.0, 1.0 / 3.0, 0.5, 2.0 / 3.0 - 1e-9, 0.99};
  for (std::int64_t i = 0; i < opts.validation_grid; ++i) {
    probes.push_back(static_cast<double>(i) / static_cast<double>(opts.validation_grid));
  }
  for (double x : probes) {
    double v = s.f_form.eval(x);
    if (v > f_value(x) + opts.tolerance) {
      throw MinorantError("Selberg minorant exceeds f at x = " + std::to_string(x), x);
    }
  }

  Extrema e = global_extrema(s.f_form);
  s.m_K = -(e.min.value - e.min.certified_radius);
  return s;
}

SelbergProperties selberg_properties(const SelbergPoly& s, std::int64_t grid) {
  SelbergProperties p;
  p.K = s.K;
  p.grid = grid;
  const double h = 1.0 / static_cast<double>(grid);
  const double lip = s.f_form.lipschitz();
  p.lipschitz_margin = lip * h / 2;
  auto f_at = [&](std::int64_t i) {
    std::int64_t r = ((i % grid) + grid) % grid;
    return (3 * r >= grid && 3 * r < 2 * grid) ? 2.0 / 3.0 : -1.0 / 3.0;
  };
  double first = s.f_form.eval(0.0);
  double prev = first;
  p.max_grid_violation = -INFINITY;
  p.certified_violation = -INFINITY;
  for (std::int64_t i = 0; i < grid; ++i) {
    double cur = prev;
    double nxt = (i + 1 == grid) ? first : s.f_form.eval(static_cast<double>(i + 1) * h);
    p.max_grid_violation = std::max(p.max_grid_violation, cur - f_at(i));
    double fmin = std::min(f_at(i), f_at(i + 1));
    p.certified_violation = std::max(p.certified_violation, (cur + nxt) / 2 + p.lipschitz_margin - fmin);
    prev = nxt;
  }
  p.integral_deficit = -s.f_form.cos_coeff(0);
  for (std::size_t k = 0; k <= s.f_form.degree(); ++k) {
    p.max_sine = std::max(p.max_sine, std::abs(s.f_form.sin_coeff(k)));
  }
  p.support = s.reported_support;
  p.support_deviation = s.support_deviation;
  Extrema e = global_extrema(s.f_form);
  p.sup_norm = std::max(std::abs(e.max.value), std::abs(e.min.value)) +
               std::max(e.max.certified_radius, e.min.certified_radius);
  p.m_K = s.m_K;
  return p;
}

nlohmann::json to_json(const SelbergProperties& p) {
  return {{"K", p.K},
          {"grid", p.grid},
          {"max_grid_violation", p.max_grid_violation},
          {"certified_violation", p.certified_violation},
          {"lipschitz_margin", p.lipschitz_margin},
          {"integral_deficit", p.integral_deficit},
          {"integral_deficit_expected", 1.0 / static_cast<double>(p.K + 1)},
          {"max_sine", p.max_sine},
          {"support", p.support},
          {"support_status", p.support_deviation ? "indexing deviation" : "within K"},
          {"sup_norm", p.sup_norm},
          {"m_K", p.m_K}};
}

nlohmann::json coefficients_json(const SelbergPoly& s) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t k = 0; k <= s.f_form.degree(); ++k) {
    rows.push_back({{"k", k},
                    {"indicator_cos", s.indicator_form.cos_coeff(k)},
                    {"f_cos", s.f_form.cos_coeff(k)},
                    {"f_sin", s.f_form.sin_coeff(k)}});
  }
  return {{"K", s.K}, {"m_K", s.m_K}, {"support", s.reported_support}, {"coefficients", rows}};
}

// --- dilated sums -----------------------------------------------------------

DilatedSum::DilatedSum(const TrigPoly& base, std::vector<std::int64_t> dilations)
    : base_(&base), dilations_(std::move(dilations)) {}

double DilatedSum::eval(double x) const {
  double s = 0;
  for (std::int64_t a : dilations_) s += base_->eval(frac_ld(static_cast<long double>(a) * x));
  return s;
}

double DilatedSum::lipschitz() const {
  double total = 0;
  for (std::int64_t a : dilations_) total += static_cast<double>(a);
  return total * base_->lipschitz();
}

double DilatedSum::curvature() const {
  double total = 0;
  for (std::int64_t a : dilations_) total += static_cast<double>(a) * static_cast<double>(a);
  return total * base_->curvature();
}

std::size_t DilatedSum::degree() const {
  std::int64_t m = 0;
  for (std::int64_t a : dilations_) m = std::max(m, a);
  return static_cast<std::size_t>(m) * base_->degree();
}

double DilatedSum::abs_coeff_sum() const {
  return static_cast<double>(dilations_.size()) * base_->abs_coeff_sum();
}

ExtremumResult dilated_sum_max(const IntegerSet& a, const SelbergPoly& s, const ExtremaOptions& opts) {
  if (a.empty()) throw std::invalid_argument("dilated sum needs a nonempty set");
  if (s.K * a.max() > kMaxDilatedDegree) {
    throw std::invalid_argument("dilated sum degree K*max(A) exceeds limit");
  }
  // the maximum over the circle is unchanged by dividing out the gcd
  const IntegerSet b = a.normalized();
  DilatedSum sum(s.f_form, {b.elements().begin(), b.elements().end()});
  ExtremumResult r = max_of(sum, sample(sum, scan_points(sum.degree())), 1.0, opts);
  r.argmax /= static_cast<double>(a.gcd());
  return r;
}

ExtremumResult dilated_sum_max(const IntegerSet& a, std::int64_t k) {
  return dilated_sum_max(a, selberg_minorant(k));
}

// --- moments ----------------------------------------------------------------

MomentResult moment_norm(const IntegerSet& a, const SelbergPoly& s, std::int64_t k, std::int64_t nodes) {
  if (a.empty()) throw std::invalid_argument("moment needs a nonempty set");
  if (k < 1) throw std::invalid_argument("moment order must be positive");
  const std::int64_t degree = 2 * k * static_cast<std::int64_t>(s.f_form.degree()) * a.max();
  if (nodes == 0) nodes = degree + 2;
  if (nodes <= degree) throw std::invalid_argument("quadrature needs more nodes than the degree");
  if (nodes > kMaxQuadratureNodes) throw std::invalid_argument("quadrature limit exceeded");
  const std::size_t kdeg = s.f_form.degree();
  const double shift = static_cast<double>(a.size()) * s.m_K;
  long double acc = 0;
  for (std::int64_t i = 0; i < nodes; ++i) {
    double g = shift;
    for (std::int64_t e : a.elements()) {
      auto r = static_cast<std::int64_t>((static_cast<__int128>(e) * i) % nodes);
      double theta = kTwoPi * static_cast<double>(r) / static_cast<double>(nodes);
      double c1 = std::cos(theta), s1 = std::sin(theta);
      double c = 1, sn = 0;
      g += s.f_form.cos_coeff(0);
      for (std::size_t j = 1; j <= kdeg; ++j) {
        double cn = c * c1 - sn * s1;
        sn = sn * c1 + c * s1;
        c = cn;
        g += s.f_form.cos_coeff(j) * c + s.f_form.sin_coeff(j) * sn;
      }
    }
    long double p = 1;
    long double gl = g;
    for (std::int64_t t = 0; t < 2 * k; ++t) p *= gl;
    acc += p;
  }
  long double mean = acc / static_cast<long double>(nodes);
  return {static_cast<double>(std::pow(mean, 1.0L / static_cast<long double>(2 * k))), nodes};
}

// --- superlevel witness -----------------------------------------------------

SuperlevelWitness superlevel_witness(const IntegerSet& a, const SelbergPoly& s,
                                     const ExactRational& delta, const ExactRational& c) {
  if (delta <= 0) throw std::invalid_argument("delta must be positive");
  if (c < 1) throw std::invalid_argument("C must be at least 1");
  SuperlevelWitness w;
  ExtremumResult top = dilated_sum_max(a, s);
  w.theta = top.argmax;
  w.max_value = top.value;
  const auto n = static_cast<std::int64_t>(a.size());
  w.eps = delta / (c * ExactRational(n) * ExactRational(s.K));

  std::vector<std::int64_t> freqs;
  for (std::int64_t e : a.elements()) {
    for (std::int64_t j = 1; j <= s.K; ++j) freqs.push_back(e * j);
  }
  std::sort(freqs.begin(), freqs.end());
  freqs.erase(std::unique(freqs.begin(), freqs.end()), freqs.end());
  IntervalSet bohr = bohr_set(freqs, w.eps);
  w.bohr_measure = measure(bohr);
  w.measure_floor = 1;
  for (std::int64_t i = 0; i < s.K * n; ++i) w.measure_floor *= w.eps;
  w.measure_bound_holds = w.bohr_measure >= w.measure_floor;

  DilatedSum sum(s.f_form, {a.elements().begin(), a.elements().end()});
  w.worst_drop = 0;
  for (const auto& arc : bohr.arcs()) {
    for (const ExactRational& t : {arc.left, ExactRational((arc.left + arc.right) / 2), arc.right}) {
      double v = sum.eval(w.theta + to_double(t));
      w.worst_drop = std::max(w.worst_drop, w.max_value - v);
      ++w.samples;
    }
  }
  w.all_pass = w.worst_drop <= to_double(delta);
  return w;
}

}  // namespace sumfree
