// circle.cpp

#include "sumfree/circle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sumfree {

CirclePoint::CirclePoint(const ExactRational& x) : value_(frac_of(x)) {}

CirclePoint frac(const ExactRational& x) { return CirclePoint(x); }

IntervalSet IntervalSet::full() {
  IntervalSet s;
  s.arcs_.push_back({ExactRational(0), ExactRational(1)});
  return s;
}

IntervalSet IntervalSet::from_arcs(std::vector<Arc> arcs) {
  std::vector<Arc> pieces;
  pieces.reserve(arcs.size() + 1);
  for (auto& arc : arcs) {
    if (arc.left > arc.right) throw std::invalid_argument("arc with left > right");
    if (arc.left == arc.right) continue;
    if (arc.right - arc.left >= 1) return full();
    ExactRational shift(floor_of(arc.left));
    ExactRational l = arc.left - shift;
    ExactRational r = arc.right - shift;
    if (r <= 1) {
      pieces.push_back({l, r});
    } else {
      pieces.push_back({l, ExactRational(1)});
      pieces.push_back({ExactRational(0), ExactRational(r - 1)});
    }
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const Arc& a, const Arc& b) { return a.left < b.left; });
  IntervalSet out;
  for (auto& arc : pieces) {
    if (!out.arcs_.empty() && arc.left <= out.arcs_.back().right) {
      if (arc.right > out.arcs_.back().right) out.arcs_.back().right = arc.right;
    } else {
      out.arcs_.push_back(std::move(arc));
    }
  }
  return out;
}

bool IntervalSet::contains(const CirclePoint& x) const {
  auto it = std::upper_bound(arcs_.begin(), arcs_.end(), x.value(),
                             [](const ExactRational& v, const Arc& a) { return v < a.left; });
  if (it == arcs_.begin()) return false;
  --it;
  return x.value() < it->right;
}

IntervalSet intersect(const IntervalSet& s, const IntervalSet& t) {
  std::vector<Arc> out;
  const auto& a = s.arcs();
  const auto& b = t.arcs();
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const ExactRational& lo = std::max(a[i].left, b[j].left);
    const ExactRational& hi = std::min(a[i].right, b[j].right);
    if (lo < hi) out.push_back({lo, hi});
    if (a[i].right < b[j].right) {
      ++i;
    } else {
      ++j;
    }
  }
  // Pieces of two canonical sets are disjoint and sorted; merging can still be
  // needed where a piece boundary came from different arcs.
  return IntervalSet::from_arcs(std::move(out));
}

IntervalSet unite(const IntervalSet& s, const IntervalSet& t) {
  std::vector<Arc> all(s.arcs());
  all.insert(all.end(), t.arcs().begin(), t.arcs().end());
  return IntervalSet::from_arcs(std::move(all));
}

IntervalSet complement(const IntervalSet& s) {
  std::vector<Arc> gaps;
  ExactRational cursor(0);
  for (const auto& arc : s.arcs()) {
    if (cursor < arc.left) gaps.push_back({cursor, arc.left});
    cursor = arc.right;
  }
  if (cursor < 1) gaps.push_back({cursor, ExactRational(1)});
  return IntervalSet::from_arcs(std::move(gaps));
}

IntervalSet combine(const IntervalSet& s, const IntervalSet& t, SetOp mode) {
  switch (mode) {
    case SetOp::intersect:
      return intersect(s, t);
    case SetOp::unite:
      return unite(s, t);
    case SetOp::complement:
      return intersect(s, complement(t));
  }
  throw std::logic_error("unknown set operation");
}

ExactRational measure(const IntervalSet& s) {
  ExactRational total(0);
  for (const auto& arc : s.arcs()) total += arc.right - arc.left;
  return total;
}

IntervalSet dilated_preimage(std::int64_t a, const ExactRational& lo, const ExactRational& hi) {
  if (a < 1) throw std::invalid_argument("dilation factor must be positive");
  if (lo < 0 || hi > 1 || lo >= hi) throw std::invalid_argument("need 0 <= lo < hi <= 1");
  std::vector<Arc> arcs;
  arcs.reserve(static_cast<std::size_t>(a));
  ExactRational den(a);
  for (std::int64_t k = 0; k < a; ++k) {
    arcs.push_back({(lo + k) / den, (hi + k) / den});
  }
  return IntervalSet::from_arcs(std::move(arcs));
}

IntervalSet middle_third_preimage(std::int64_t a) {
  return dilated_preimage(a, make_rational(1, 3), make_rational(2, 3));
}

int chi3(std::int64_t n) {
  switch (((n % 3) + 3) % 3) {
    case 1:
      return 1;
    case 2:
      return -1;
    default:
      return 0;
  }
}

ExactRational two_element_measure_formula(std::int64_t a, std::int64_t b) {
  if (a < 1 || b < 1) throw std::invalid_argument("elements must be positive");
  if (std::gcd(a, b) != 1) throw std::invalid_argument("formula requires coprime a, b");
  ExactRational ab = ExactRational(a) * ExactRational(b);
  return make_rational(1, 9) * (1 + 2 * chi3(a) * chi3(b) / ab);
}

IntervalSet bohr_set(std::span<const std::int64_t> freqs, const ExactRational& eps) {
  if (freqs.empty()) throw std::invalid_argument("bohr set needs at least one frequency");
  if (eps <= 0 || eps >= make_rational(1, 2)) {
    throw std::invalid_argument("bohr set radius must lie in (0, 1/2)");
  }
  IntervalSet result = IntervalSet::full();
  for (std::int64_t v : freqs) {
    if (v < 1) throw std::invalid_argument("bohr frequencies must be positive");
    std::vector<Arc> arcs;
    ExactRational den(v);
    for (std::int64_t k = 0; k < v; ++k) {
      arcs.push_back({(k - eps) / den, (k + eps) / den});
    }
    result = intersect(result, IntervalSet::from_arcs(std::move(arcs)));
    if (result.empty()) break;
  }
  return result;
}

namespace {

nlohmann::json int_json(const BigInt& z) {
  if (mpz_fits_slong_p(z.get_mpz_t())) return z.get_si();
  return z.get_str();
}

BigInt int_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw std::invalid_argument("expected integer in interval set json");
}

}  // namespace

nlohmann::json to_json(const IntervalSet& s) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& arc : s.arcs()) {
    out.push_back({int_json(arc.left.get_num()), int_json(arc.left.get_den()),
                   int_json(arc.right.get_num()), int_json(arc.right.get_den())});
  }
  return out;
}

IntervalSet interval_set_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("interval set json must be an array");
  std::vector<Arc> arcs;
  for (const auto& q : j) {
    if (!q.is_array() || q.size() != 4) throw std::invalid_argument("arc must be a quadruple");
    arcs.push_back({make_rational(int_from_json(q[0]), int_from_json(q[1])),
                    make_rational(int_from_json(q[2]), int_from_json(q[3]))});
  }
  return IntervalSet::from_arcs(std::move(arcs));
}

}  // namespace sumfree
