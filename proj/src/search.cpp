#include "sumfree/search.hpp"

#include "sumfree/report.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sumfree {

namespace {

using Json = nlohmann::json;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::int64_t gcd_of(std::span<const std::int64_t> v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  return g;
}

// Lexicographic combinations of {1..t} of size n.
std::uint64_t binomial_checked(std::int64_t t, std::int64_t n) {
  if (n < 0 || n > t) return 0;
  BigInt b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(t), static_cast<unsigned long>(n));
  if (!mpz_fits_ulong_p(b.get_mpz_t())) throw std::overflow_error("binomial coefficient too large");
  return mpz_get_ui(b.get_mpz_t());
}

std::vector<std::int64_t> unrank_combination(std::int64_t t, std::int64_t n, std::uint64_t rank) {
  std::vector<std::int64_t> c;
  c.reserve(n);
  std::int64_t x = 1;
  for (std::int64_t i = 0; i < n; ++i) {
    for (;; ++x) {
      const std::uint64_t below = binomial_checked(t - x, n - i - 1);
      if (rank < below) break;
      rank -= below;
    }
    c.push_back(x++);
  }
  return c;
}

bool next_combination(std::vector<std::int64_t>& c, std::int64_t t) {
  const std::int64_t n = static_cast<std::int64_t>(c.size());
  std::int64_t i = n - 1;
  while (i >= 0 && c[i] == t - (n - 1 - i)) --i;
  if (i < 0) return false;
  ++c[i];
  for (std::int64_t j = i + 1; j < n; ++j) c[j] = c[j - 1] + 1;
  return true;
}

// Visits every combination with rank in [begin, end).
template <typename Visit>
void for_each_combination(std::int64_t t, std::int64_t n, std::uint64_t begin, std::uint64_t end,
                          Visit&& visit) {
  if (begin >= end) return;
  auto c = unrank_combination(t, n, begin);
  for (std::uint64_t r = begin; r < end; ++r) {
    visit(std::as_const(c), r);
    if (!next_combination(c, t)) break;
  }
}

ExactRational m_from_count(int count, std::size_t n) {
  return ExactRational(count) - make_rational(static_cast<std::int64_t>(n), 3);
}

// Exact re-check of a claimed m: the maximum of the breakpoint scan with
// witnesses, and f_A evaluated at the first witness.
bool reverify(const IntegerSet& a, const ExactRational& m) {
  const MaxResult r = max_fA(a);
  if (r.m != m || r.witnesses.empty()) return false;
  return eval_fA(a, r.witnesses.front()) == m;
}

void audit_one(const IntegerSet& a, int count, const AuditOptions& opts, AuditSummary& audit) {
  const auto oracle = max_middle_count_lcm_grid(a, opts.max_lcm);
  if (!oracle) {
    ++audit.skipped_lcm;
    return;
  }
  ++audit.sampled;
  if (*oracle == count) ++audit.agreed;
}

Json set_json(const IntegerSet& a) {
  return Json(std::vector<std::int64_t>(a.elements().begin(), a.elements().end()));
}

IntegerSet set_from_json(const Json& j) { return IntegerSet(j.get<std::vector<std::int64_t>>()); }

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

bool audit_pick(std::uint64_t seed, std::uint64_t index, double rate) {
  const std::uint64_t h = splitmix64(splitmix64(seed) ^ index);
  return static_cast<double>(h >> 11) * 0x1.0p-53 < rate;
}

std::string ClassifiedSet::family_label() const { return join(families, " & "); }

std::vector<std::string> n3_families(const IntegerSet& a) {
  std::vector<std::string> out;
  if (a.size() != 3) return out;
  const auto e = a.elements();
  if (e[0] + e[1] == e[2]) out.emplace_back("u,v,u+v");
  for (auto x : e) {
    if (a.contains(2 * x)) {
      out.emplace_back("A∩2A");
      break;
    }
  }
  if (a == IntegerSet{1, 5, 8} || a == IntegerSet{2, 3, 10}) out.emplace_back("sporadic");
  return out;
}

std::vector<std::string> n4_families(const IntegerSet& a) {
  std::vector<std::string> out;
  if (a.size() != 4) return out;
  const auto e = a.elements();
  const auto doubled = [](std::int64_t x, std::int64_t y) { return y == 2 * x || x == 2 * y; };
  // the three ways to split four elements into two pairs
  if ((doubled(e[0], e[1]) && doubled(e[2], e[3])) || (doubled(e[0], e[2]) && doubled(e[1], e[3])) ||
      (doubled(e[0], e[3]) && doubled(e[1], e[2])))
    out.emplace_back("u,2u,v,2v");
  static const std::vector<IntegerSet> sporadic = {
      {1, 2, 3, 4}, {1, 2, 4, 5}, {1, 4, 5, 8}, {2, 3, 5, 10}};
  if (std::find(sporadic.begin(), sporadic.end(), a) != sporadic.end()) out.emplace_back("sporadic");
  return out;
}

namespace {

template <typename Classify>
ClassificationReport classify(std::int64_t n, std::int64_t bound, const AuditOptions& opts,
                              Classify&& judge) {
  if (bound < n) throw std::invalid_argument("bound too small");
  ClassificationReport rep;
  rep.bound = bound;
  rep.audit.seed = opts.seed;
  const std::uint64_t total = binomial_checked(bound, n);
  for_each_combination(bound, n, 0, total, [&](const std::vector<std::int64_t>& c, std::uint64_t r) {
    if (gcd_of(c) != 1) return;
    ++rep.examined;
    IntegerSet a(c);
    const int count = max_middle_count(a);
    const ExactRational m = m_from_count(count, a.size());
    if (audit_pick(opts.seed, r, opts.rate)) audit_one(a, count, opts, rep.audit);
    auto [exception, mismatch, families] = judge(a, m);
    if (exception) {
      ++rep.audit.exceptions_reverified;
      if (!reverify(a, m)) ++rep.audit.reverify_failures;
      rep.exceptions.push_back({a, m, families});
    }
    if (mismatch) rep.mismatches.push_back({std::move(a), m, std::move(families)});
  });
  return rep;
}

struct Judgement {
  bool exception;
  bool mismatch;
  std::vector<std::string> families;
};

}  // namespace

ClassificationReport classify_n3(std::int64_t bound, const AuditOptions& audit) {
  if (bound > 1000) throw std::invalid_argument("classify_n3 bound must be at most 1000");
  return classify(3, bound, audit, [](const IntegerSet& a, const ExactRational& m) {
    auto fam = n3_families(a);
    const bool low = m == 1;
    const bool valid = m == 1 || m == 2;
    return Judgement{low, !valid || low != !fam.empty(), std::move(fam)};
  });
}

ClassificationReport classify_n4(std::int64_t bound, const AuditOptions& audit) {
  if (bound > 200) throw std::invalid_argument("classify_n4 bound must be at most 200");
  return classify(4, bound, audit, [](const IntegerSet& a, const ExactRational& m) {
    auto fam = n4_families(a);
    const bool low = m <= make_rational(2, 3);
    const bool bad = low != !fam.empty() || (low && m != make_rational(2, 3)) || m <= 0;
    return Judgement{low, bad, std::move(fam)};
  });
}

Json to_json(const ClassifiedSet& c) {
  return {{"set", set_json(c.set)}, {"m", to_string(c.m)}, {"family", c.family_label()}};
}

Json to_json(const ClassificationReport& r) {
  Json ex = Json::array(), mm = Json::array();
  for (const auto& c : r.exceptions) ex.push_back(to_json(c));
  for (const auto& c : r.mismatches) mm.push_back(to_json(c));
  return {{"params", {{"bound", r.bound}}},
          {"examined", r.examined},
          {"exceptions", ex},
          {"mismatches", mm},
          {"audit",
           {{"seed", r.audit.seed},
            {"sampled", r.audit.sampled},
            {"agreed", r.audit.agreed},
            {"skipped_lcm", r.audit.skipped_lcm},
            {"exceptions_reverified", r.audit.exceptions_reverified},
            {"reverify_failures", r.audit.reverify_failures},
            {"ok", r.audit.ok()}}}};
}

std::string exceptions_csv(const ClassificationReport& r) {
  std::ostringstream out;
  out << "set, m, family\n";
  for (const auto& c : r.exceptions) {
    std::string s;
    for (auto x : c.set.elements()) {
      if (!s.empty()) s += ' ';
      s += std::to_string(x);
    }
    out << s << ", " << to_string(c.m) << ", " << c.family_label() << "\n";
  }
  return out.str();
}

std::optional<std::pair<std::int64_t, std::int64_t>> grid_certificate(
    const IntegerSet& a, std::int64_t d_min, std::int64_t d_max, const ExactRational& threshold) {
  if (d_min < 1 || d_min > d_max) throw std::invalid_argument("need 1 <= d_min <= d_max");
  for (std::int64_t d = d_min; d <= d_max; ++d) {
    for (std::int64_t j = 1; j < d; ++j) {
      if (eval_fA(a, CirclePoint(make_rational(j, d))) > threshold) return std::pair{j, d};
    }
  }
  return std::nullopt;
}

LemmaSweepReport lemma_sweeps(std::int64_t bound) {
  if (bound < 3 || bound > 300) throw std::invalid_argument("lemma_sweeps bound must be in [3, 300]");
  LemmaSweepReport rep;
  rep.bound = bound;

  const auto qualifies = [](std::int64_t u, std::int64_t v) {
    return std::gcd(u, v) > 2 && u != 2 * v && v != 2 * u;
  };
  for (std::int64_t u = 1; u <= bound; ++u) {
    for (std::int64_t v = u + 1; v <= bound; ++v) {
      const bool uv = qualifies(u, v);
      for (std::int64_t w = v + 1; w <= bound; ++w) {
        if (!(uv || qualifies(u, w) || qualifies(v, w))) continue;
        if (std::gcd(std::gcd(u, v), w) != 1) continue;
        ++rep.gcd_checked;
        IntegerSet a{u, v, w};
        if (!middle_count_reaches(a, 3)) rep.gcd_failures.push_back(a);
      }
    }
  }

  std::vector<std::optional<IntervalSet>> pre(bound + 1);
  const auto preimage = [&](std::int64_t a) -> const IntervalSet& {
    if (!pre[a]) pre[a] = middle_third_preimage(a);
    return *pre[a];
  };
  for (std::int64_t u = 1; 2 * u * (u + 1) < bound; ++u) {
    for (std::int64_t v = u + 1; 2 * u * v < bound; ++v) {
      if (v == 2 * u) continue;
      const IntervalSet uv = intersect(preimage(u), preimage(v));
      for (std::int64_t w = 2 * u * v + 1; w <= bound; ++w) {
        ++rep.size_checked;
        if (intersect(uv, preimage(w)).empty()) rep.size_failures.push_back({u, v, w});
      }
    }
  }
  return rep;
}

Json to_json(const LemmaSweepReport& r) {
  Json g = Json::array(), s = Json::array();
  for (const auto& a : r.gcd_failures) g.push_back(set_json(a));
  for (const auto& t : r.size_failures) s.push_back(t);
  return {{"params", {{"bound", r.bound}}},
          {"gcd_checked", r.gcd_checked},
          {"gcd_failures", g},
          {"size_checked", r.size_checked},
          {"size_failures", s}};
}

namespace {

std::vector<std::int64_t> doubled_union(std::span<const std::int64_t> speeds) {
  std::vector<std::int64_t> v;
  for (auto x : speeds) {
    v.push_back(x);
    v.push_back(2 * x);
  }
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

LonelyRunnerResult lonely_runner_check(std::span<const std::int64_t> speeds) {
  if (speeds.size() != 5) throw std::invalid_argument("need exactly 5 speeds");
  for (auto x : speeds)
    if (x <= 0) throw std::invalid_argument("speeds must be positive");
  auto v = doubled_union(speeds);
  if (std::adjacent_find(v.begin(), v.end()) != v.end())
    throw std::invalid_argument("the values x_i, 2x_i must be distinct");
  LonelyRunnerResult out;
  out.set = IntegerSet(std::move(v));
  out.m = max_fA(out.set).m;
  out.exceptional = out.m <= make_rational(2, 3);
  IntervalSet s = IntervalSet::full();
  for (auto x : speeds) s = intersect(s, dilated_preimage(x, make_rational(1, 6), make_rational(5, 6)));
  if (!s.empty()) out.theta = CirclePoint(s.arcs().front().left);
  return out;
}

Json to_json(const LonelyRunnerResult& r) {
  Json j = {{"set", set_json(r.set)}, {"m", to_string(r.m)}, {"exceptional", r.exceptional}};
  j["theta"] = r.theta ? Json(to_string(r.theta->value())) : Json(nullptr);
  return j;
}

LonelySweepReport lonely_runner_sweep(std::int64_t max_speed) {
  if (max_speed < 5) throw std::invalid_argument("max_speed must be at least 5");
  LonelySweepReport rep;
  rep.max_speed = max_speed;
  for_each_combination(max_speed, 5, 0, binomial_checked(max_speed, 5),
                       [&](const std::vector<std::int64_t>& c, std::uint64_t) {
                         auto v = doubled_union(c);
                         if (std::adjacent_find(v.begin(), v.end()) != v.end()) return;
                         ++rep.examined;
                         // m <= 2/3 exactly when no point has 5 of the 10 in the middle third
                         if (!middle_count_reaches(IntegerSet(std::move(v)), 5))
                           rep.exceptional.push_back(lonely_runner_check(c));
                       });
  return rep;
}

// --- minorant-criterion verifier ---------------------------------------------

Json to_json(const Mc2Params& p) {
  return {{"n", p.n},           {"S", p.S},           {"K", p.K},
          {"delta", to_string(p.delta)}, {"T", p.T},  {"shards", p.shards},
          {"budget", p.budget}, {"target_radius", p.target_radius}};
}

std::string mc2_params_hash(const Mc2Params& p) {
  Json j = to_json(p);
  j.erase("shards");  // the report does not depend on the shard plan
  return content_hash(j.dump());
}

Json to_json(const Mc2Report& r) {
  Json f = Json::array(), nm = Json::array();
  for (const auto& x : r.failures)
    f.push_back({{"set", set_json(x.set)},
                 {"minorant_max", x.minorant_max},
                 {"certified_radius", x.certified_radius},
                 {"m", to_string(x.m)},
                 {"category", x.category},
                 {"violates_conjecture", x.violates_conjecture}});
  for (const auto& x : r.near_misses) nm.push_back({{"set", set_json(x.set)}, {"lower_bound", x.lower_bound}});
  return {{"examined", r.examined}, {"passes", r.passes}, {"failures", f}, {"near_misses", nm}};
}

Mc2Report mc2_report_from_json(const Json& j) {
  Mc2Report r;
  r.examined = j.at("examined").get<std::uint64_t>();
  r.passes = j.at("passes").get<std::uint64_t>();
  for (const auto& x : j.at("failures"))
    r.failures.push_back({set_from_json(x.at("set")), x.at("minorant_max").get<double>(),
                          x.at("certified_radius").get<double>(),
                          parse_rational(x.at("m").get<std::string>()),
                          x.at("category").get<std::string>(), x.at("violates_conjecture").get<bool>()});
  for (const auto& x : j.at("near_misses"))
    r.near_misses.push_back({set_from_json(x.at("set")), x.at("lower_bound").get<double>()});
  return r;
}

namespace {

void write_checkpoint(const std::filesystem::path& path, const std::string& hash, std::int64_t next,
                      const Mc2Report& rep) {
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  Json j = {{"params_hash", hash},
            {"next_shard_index", next},
            {"partial_results", to_json(rep)},
            {"timestamp", std::chrono::duration_cast<std::chrono::seconds>(now).count()}};
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp.string());
    out << j.dump() << "\n";
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

Mc2Outcome verify_mc2(const Mc2Params& p, const Mc2RunOptions& run) {
  if (p.n < 1 || p.S < 1 || p.K < 1 || p.T < p.n || p.shards < 1)
    throw std::invalid_argument("verify_mc2: need n, S, K, shards >= 1 and T >= n");
  if (p.delta <= 0) throw std::invalid_argument("verify_mc2: delta must be positive");
  const std::uint64_t total = binomial_checked(p.T, p.n);
  const std::uint64_t shards = static_cast<std::uint64_t>(p.shards);
  const std::uint64_t per_shard = (total + shards - 1) / shards;
  if (per_shard > p.budget)
    throw std::runtime_error("verify_mc2: " + std::to_string(total) + " candidates exceed the budget of " +
                             std::to_string(p.budget) + " per shard; use more shards");

  const std::string hash = mc2_params_hash(p);
  Mc2Outcome out;
  if (run.checkpoint && std::filesystem::exists(*run.checkpoint)) {
    std::ifstream in(*run.checkpoint);
    const Json j = Json::parse(in);
    if (j.at("params_hash").get<std::string>() != hash)
      throw std::runtime_error("checkpoint was written for different parameters");
    out.next_shard = j.at("next_shard_index").get<std::int64_t>();
    out.report = mc2_report_from_json(j.at("partial_results"));
  }

  const SelbergPoly s = selberg_minorant(p.K);
  const ExactRational threshold_exact = make_rational(p.S, 3) + p.delta;
  const ExactRational third = make_rational(p.S, 3);
  const double threshold = to_double(threshold_exact);
  const double near = threshold + to_double(p.delta);
  ExtremaOptions eo;
  eo.target_radius = p.target_radius;

  std::int64_t processed = 0;
  while (out.next_shard < p.shards) {
    if (run.stop_after && processed >= *run.stop_after) break;
    const std::uint64_t i = static_cast<std::uint64_t>(out.next_shard);
    const std::uint64_t begin = total * i / shards, end = total * (i + 1) / shards;
    for_each_combination(p.T, p.n, begin, end, [&](const std::vector<std::int64_t>& c, std::uint64_t) {
      if (gcd_of(c) != 1) return;
      ++out.report.examined;
      IntegerSet a(c);
      const ExtremumResult r = dilated_sum_max(a, s, eo);
      const double lower = r.value - r.certified_radius;
      if (lower >= threshold) {
        ++out.report.passes;
        if (lower < near) out.report.near_misses.push_back({a, lower});
        return;
      }
      Mc2Failure f{a, r.value, r.certified_radius, max_fA(a).m, "", false};
      f.category = f.m >= threshold_exact ? "minorant_too_weak" : "m_below_threshold";
      f.violates_conjecture = f.m < third;
      out.report.failures.push_back(std::move(f));
    });
    ++out.next_shard;
    ++processed;
    if (run.checkpoint) write_checkpoint(*run.checkpoint, hash, out.next_shard, out.report);
  }
  out.complete = out.next_shard == p.shards;
  return out;
}

// --- base cases of the size reduction ------------------------------------------

BaseCaseReport theorem_main_base(std::int64_t S, std::int64_t n_s, std::int64_t universe, std::uint64_t seed) {
  if (S < 1 || n_s < 0 || universe < 1) throw std::invalid_argument("theorem_main_base: bad parameters");
  BaseCaseReport rep;
  rep.S = S;
  rep.N_S = n_s;
  rep.universe = universe;
  const ExactRational third = make_rational(S, 3);
  std::uint64_t index = 0;
  for (std::int64_t n = n_s + 1; n <= std::min(3 * n_s + 2 * S, universe); ++n) {
    // m >= S/3 iff some point has at least (S + n)/3 elements in the middle third
    const int target = static_cast<int>((S + n + 2) / 3);
    for_each_combination(universe, n, 0, binomial_checked(universe, n),
                         [&](const std::vector<std::int64_t>& c, std::uint64_t) {
                           if (gcd_of(c) != 1) return;
                           ++rep.examined;
                           const bool audit = audit_pick(seed, index++, 0.01);
                           IntegerSet a(c);
                           const std::int64_t n0 = static_cast<std::int64_t>(a.a0().size());
                           const std::int64_t n1 = static_cast<std::int64_t>(a.a1().size());
                           const ExactRational lem1 = make_rational(n0, 6) - make_rational(n1, 3);
                           if (lem1 > third) {
                             ++rep.fast_path;
                             if (audit) {
                               ++rep.fast_path_audited;
                               if (m_from_count(max_middle_count(a), a.size()) < lem1)
                                 ++rep.fast_path_audit_failures;
                             }
                           } else {
                             ++rep.a1_bound_checked;
                             if (make_rational(n - 2 * S, 3) > n1) ++rep.a1_bound_violations;
                             if (middle_count_reaches(a, target)) {
                               ++rep.verified;
                             } else {
                               const ExactRational m = max_fA(a).m;
                               rep.failures.push_back({a, m, {}});
                             }
                           }
                           if (audit) {
                             const auto chain = reduce_chain(a, 1);
                             const int top = max_middle_count(a);
                             const ExactRational m = m_from_count(top, a.size());
                             for (std::size_t i = 1; i < chain.size(); ++i) {
                               ++rep.chains_checked;
                               if (m < max_fA(chain[i]).m) ++rep.chain_violations;
                             }
                           }
                         });
  }
  return rep;
}

Json to_json(const BaseCaseReport& r) {
  Json f = Json::array();
  for (const auto& c : r.failures) f.push_back(to_json(c));
  return {{"params", {{"S", r.S}, {"N_S", r.N_S}, {"universe", r.universe}}},
          {"scope", "PARTIAL: only subsets of the given universe are checked"},
          {"examined", r.examined},
          {"fast_path", r.fast_path},
          {"fast_path_audited", r.fast_path_audited},
          {"fast_path_audit_failures", r.fast_path_audit_failures},
          {"verified", r.verified},
          {"failures", f},
          {"a1_bound_checked", r.a1_bound_checked},
          {"a1_bound_violations", r.a1_bound_violations},
          {"chains_checked", r.chains_checked},
          {"chain_violations", r.chain_violations}};
}

}  // namespace sumfree
