#include "sumfree/cli.hpp"

#include "sumfree/certify.hpp"
#include "sumfree/freiman.hpp"
#include "sumfree/report.hpp"
#include "sumfree/search.hpp"
#include "sumfree/selberg.hpp"
#include "sumfree/step.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <sstream>

namespace sumfree {

namespace {

using Json = nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::int64_t> parse_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw UsageError("malformed integer '" + tok + "'");
    }
    if (used != tok.size()) throw UsageError("malformed integer '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

IntegerSet parse_set(const std::string& text) {
  auto v = parse_list(text);
  for (auto x : v)
    if (x <= 0) throw UsageError("set elements must be positive");
  try {
    return IntegerSet(std::move(v));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Json set_json(const IntegerSet& a) {
  return Json(std::vector<std::int64_t>(a.elements().begin(), a.elements().end()));
}

std::string classification_csv(const ClassificationReport& r) { return exceptions_csv(r); }

struct Output {
  Json results;
  std::string csv;  // empty when there is no tabular form
  int status = kExitOk;
};

Output cmd_ma(const IntegerSet& a) {
  const MaxResult r = max_fA(a);
  Json w = Json::array();
  for (const auto& x : r.witnesses) w.push_back(to_string(x.value()));
  return {{{"set", set_json(a)}, {"n", a.size()}, {"m", to_string(r.m)}, {"m_decimal", to_double(r.m)},
           {"witnesses", w}},
          "set, m\n" + a.to_string() + ", " + to_string(r.m) + "\n"};
}

Output cmd_sfs(const IntegerSet& a) {
  const SumFreeResult r = largest_sum_free(a);
  const ExactRational m = max_fA(a).m;
  const ExactRational bound = make_rational(static_cast<std::int64_t>(a.size()), 3) + m;
  return {{{"set", set_json(a)},
           {"s", r.size},
           {"witness", r.witness},
           {"m", to_string(m)},
           {"middle_third_bound", to_string(bound)}},
          ""};
}

Output cmd_selberg(std::int64_t k, const std::string& what) {
  const SelbergPoly s = selberg_minorant(k);
  if (what == "coeffs") return {coefficients_json(s), ""};
  return {to_json(selberg_properties(s)), ""};
}

Output cmd_freiman(const std::vector<std::int64_t>& a, std::int64_t order) {
  const Reduction r = reduce_elements(a, order);
  const auto normalized = normalize_positive(r.result);
  Json iso;
  try {
    iso = is_freiman_iso(a, r.result, order);
  } catch (const std::exception&) {
    iso = nullptr;  // enumeration too large to verify
  }
  std::int64_t max_abs = 0;
  for (auto b : r.result) max_abs = std::max(max_abs, b < 0 ? -b : b);
  return {{{"input", a},
           {"order", order},
           {"result", r.result},
           {"normalized", normalized},
           {"max_abs", max_abs},
           {"target", reduction_target(order, static_cast<std::int64_t>(a.size()))},
           {"isomorphism_verified", iso},
           {"trace", to_json(r.trace)}},
          ""};
}

Output cmd_classify(int n, std::int64_t bound, std::uint64_t seed) {
  AuditOptions opts;
  opts.seed = seed;
  const ClassificationReport r = n == 3 ? classify_n3(bound, opts) : classify_n4(bound, opts);
  const int status = r.mismatches.empty() && r.audit.ok() ? kExitOk : kExitMismatch;
  return {to_json(r), classification_csv(r), status};
}

Output cmd_lonely(const std::string& speeds, std::int64_t sweep) {
  if (sweep > 0) {
    const LonelySweepReport r = lonely_runner_sweep(sweep);
    Json ex = Json::array();
    std::string csv = "set, m, family\n";
    for (const auto& x : r.exceptional) {
      ex.push_back(to_json(x));
      std::string s;
      for (auto e : x.set.elements()) s += (s.empty() ? "" : " ") + std::to_string(e);
      csv += s + ", " + to_string(x.m) + ", lonely\n";
    }
    return {{{"params", {{"max_speed", r.max_speed}}}, {"examined", r.examined}, {"exceptions", ex}}, csv};
  }
  const auto x = parse_list(speeds);
  try {
    return {to_json(lonely_runner_check(x)), ""};
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Output cmd_mc2(const Mc2Params& p, const std::string& resume, std::int64_t stop_after) {
  Mc2RunOptions run;
  if (!resume.empty()) run.checkpoint = resume;
  if (stop_after >= 0) run.stop_after = stop_after;
  const Mc2Outcome o = verify_mc2(p, run);
  Json j = to_json(o.report);
  j["params"] = to_json(p);
  j["complete"] = o.complete;
  j["next_shard"] = o.next_shard;
  j["params_hash"] = mc2_params_hash(p);
  j["scope"] = "desk scale: T is far below the universe the conjecture needs";
  return {j, ""};
}

Output cmd_certify(const IntegerSet& a, const std::string& phi) {
  NonnegPoly p = NonnegPoly::constant(1);
  if (phi == "quadratic") {
    p = testfn::quadratic_dip(a.elements().front());
  } else if (phi == "cubic") {
    p = testfn::cubic_dip();
  } else if (phi == "product" || phi == "cubic-pair") {
    const auto uv = testfn::smallest_non_multiple_pair(a);
    p = phi == "product" ? testfn::product_of_dips(uv.u, uv.v) : testfn::cubic_dip_pair(uv.u, uv.v);
  } else {
    throw UsageError("unknown test function '" + phi + "'");
  }
  const Certificate c = certify_lower_bound(a, p);
  Json j = to_json(c);
  j["m"] = to_string(max_fA(a).m);
  return {j, ""};
}

Output cmd_lemmas(std::int64_t bound) {
  const LemmaSweepReport r = lemma_sweeps(bound);
  const bool ok = r.gcd_failures.empty() && r.size_failures.empty();
  return {to_json(r), "", ok ? kExitOk : kExitMismatch};
}

Output cmd_base(std::int64_t s, std::int64_t ns, std::int64_t universe, std::uint64_t seed) {
  const BaseCaseReport r = theorem_main_base(s, ns, universe, seed);
  const bool ok = r.failures.empty() && r.fast_path_audit_failures == 0 && r.a1_bound_violations == 0 &&
                  r.chain_violations == 0;
  return {to_json(r), "", ok ? kExitOk : kExitMismatch};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sum-free dilation maxima, certificates and finite searches", "sumfree"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", cfg.seed, "audit sampling seed");

  std::string set_text, speeds, report_kind = "props", phi = "product", delta_text = "0.05", resume;
  std::int64_t bound = 0, k = 10, order = 2, n = 2, s = 1, t = 30, shards = 1, sweep = 0, stop_after = -1;
  std::int64_t ns = 2, universe = 20;
  std::uint64_t budget = 1'000'000;

  auto* ma = app.add_subcommand("ma", "m_A with maximizing points");
  ma->add_option("--set", set_text, "comma-separated positive integers")->required();
  auto* sfs = app.add_subcommand("sfs", "largest sum-free subset");
  sfs->add_option("--set", set_text)->required();
  auto* sel = app.add_subcommand("selberg", "Selberg minorant of f");
  sel->add_option("--K", k)->required()->check(CLI::Range(1, 100000));
  sel->add_option("--report", report_kind)->check(CLI::IsMember({"coeffs", "props"}));
  auto* fre = app.add_subcommand("freiman", "Freiman element-size reduction");
  auto* fre_reduce = fre->add_subcommand("reduce", "reduce a set of integers");
  fre->require_subcommand(1);
  fre_reduce->add_option("--set", set_text)->required();
  fre_reduce->add_option("--order", order)->check(CLI::Range(1, 64));
  auto* c3 = app.add_subcommand("classify3", "three-element classification sweep");
  c3->add_option("--bound", bound)->required()->check(CLI::Range(3, 1000));
  auto* c4 = app.add_subcommand("classify4", "four-element classification sweep");
  c4->add_option("--bound", bound)->required()->check(CLI::Range(4, 200));
  auto* mc2 = app.add_subcommand("mc2", "minorant verifier over n-subsets of {1..T}");
  mc2->add_option("--n", n)->required()->check(CLI::Range(1, 64));
  mc2->add_option("--S", s)->required()->check(CLI::Range(1, 1000));
  mc2->add_option("--K", k)->required()->check(CLI::Range(1, 100000));
  mc2->add_option("--delta", delta_text)->required();
  mc2->add_option("--T", t)->required()->check(CLI::Range(1, 100000));
  mc2->add_option("--shards", shards)->check(CLI::Range(1, 1000000));
  mc2->add_option("--budget", budget);
  mc2->add_option("--resume", resume, "checkpoint file, read if present and updated per shard");
  mc2->add_option("--stop-after", stop_after, "process at most this many shards");
  auto* lon = app.add_subcommand("lonely", "doubled lonely-runner sets");
  auto* lon_speeds = lon->add_option("--speeds", speeds, "five distinct positive speeds");
  lon->add_option("--sweep", sweep, "check every speed set up to this maximum")->excludes(lon_speeds);
  auto* cert = app.add_subcommand("certify", "certified lower bound from a test function");
  cert->add_option("--set", set_text)->required();
  cert->add_option("--phi", phi)->check(CLI::IsMember({"product", "quadratic", "cubic", "cubic-pair"}));
  auto* lem = app.add_subcommand("lemmas", "gcd and size lemma sweeps");
  lem->add_option("--bound", bound)->required()->check(CLI::Range(3, 300));
  auto* base = app.add_subcommand("base", "base cases of the size induction (partial)");
  base->add_option("--S", s)->required()->check(CLI::Range(1, 1000));
  base->add_option("--NS", ns)->required()->check(CLI::Range(0, 1000));
  base->add_option("--universe", universe)->required()->check(CLI::Range(1, 64));

  std::vector<std::string> argv_store{"sumfree"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Output o;
    if (ma->parsed()) {
      const IntegerSet a = parse_set(set_text);
      cfg.command = "ma";
      cfg.params = {{"set", set_json(a)}};
      o = cmd_ma(a);
    } else if (sfs->parsed()) {
      const IntegerSet a = parse_set(set_text);
      cfg.command = "sfs";
      cfg.params = {{"set", set_json(a)}};
      o = cmd_sfs(a);
    } else if (sel->parsed()) {
      cfg.command = "selberg";
      cfg.params = {{"K", k}, {"report", report_kind}};
      o = cmd_selberg(k, report_kind);
    } else if (fre_reduce->parsed()) {
      const auto a = parse_list(set_text);
      for (auto x : a)
        if (x == 0) throw UsageError("elements must be nonzero");
      cfg.command = "freiman reduce";
      cfg.params = {{"set", a}, {"order", order}};
      o = cmd_freiman(a, order);
    } else if (c3->parsed() || c4->parsed()) {
      const int size = c3->parsed() ? 3 : 4;
      cfg.command = size == 3 ? "classify3" : "classify4";
      cfg.params = {{"bound", bound}};
      o = cmd_classify(size, bound, cfg.seed);
    } else if (mc2->parsed()) {
      Mc2Params p;
      p.n = n;
      p.S = s;
      p.K = k;
      try {
        p.delta = parse_rational(delta_text);
      } catch (const std::exception&) {
        throw UsageError("malformed --delta '" + delta_text + "'");
      }
      if (p.delta <= 0) throw UsageError("--delta must be positive");
      p.T = t;
      p.shards = shards;
      p.budget = budget;
      cfg.command = "mc2";
      cfg.params = to_json(p);
      cfg.shards = shards;
      cfg.checkpoint = resume;
      o = cmd_mc2(p, resume, stop_after);
    } else if (lon->parsed()) {
      if (speeds.empty() && sweep <= 0) throw UsageError("lonely needs --speeds or --sweep");
      cfg.command = "lonely";
      cfg.params = sweep > 0 ? Json{{"sweep", sweep}} : Json{{"speeds", parse_list(speeds)}};
      o = cmd_lonely(speeds, sweep);
    } else if (cert->parsed()) {
      const IntegerSet a = parse_set(set_text);
      cfg.command = "certify";
      cfg.params = {{"set", set_json(a)}, {"phi", phi}};
      o = cmd_certify(a, phi);
    } else if (lem->parsed()) {
      cfg.command = "lemmas";
      cfg.params = {{"bound", bound}};
      o = cmd_lemmas(bound);
    } else if (base->parsed()) {
      cfg.command = "base";
      cfg.params = {{"S", s}, {"N_S", ns}, {"universe", universe}};
      o = cmd_base(s, ns, universe, cfg.seed);
    }

    if (cfg.format == "csv") {
      if (o.csv.empty()) throw UsageError("csv output is only available for exception tables");
      out << o.csv;
    } else {
      out << serialize(make_report(cfg, std::move(o.results)));
    }
    if (o.status != kExitOk) err << "sumfree: mismatches found\n";
    return o.status;
  } catch (const UsageError& e) {
    err << "sumfree: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "sumfree: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "sumfree: error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace sumfree
