// search.hpp
//
// Finite searches: the n = 3 and n = 4 classifications of small m_A, grid
// certificates, lemma sweeps, the lonely-runner example, the base-case harness
// for the reduction to finitely many sizes, and the checkpointed desk-scale
// verifier for the minorant criterion.

#pragma once

#include "sumfree/circle.hpp"
#include "sumfree/rational.hpp"
#include "sumfree/selberg.hpp"
#include "sumfree/step.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sumfree {

struct ClassifiedSet {
  IntegerSet set;
  ExactRational m;
  std::vector<std::string> families;

  std::string family_label() const;  // families joined by " & "
};

struct AuditSummary {
  std::uint64_t seed = 0;
  std::size_t sampled = 0;
  std::size_t agreed = 0;
  std::size_t skipped_lcm = 0;  // picked but lcm above the oracle limit
  std::size_t exceptions_reverified = 0;
  std::size_t reverify_failures = 0;
  bool ok() const { return sampled == agreed && reverify_failures == 0; }
};

struct ClassificationReport {
  std::int64_t bound = 0;
  std::uint64_t examined = 0;
  std::vector<ClassifiedSet> exceptions;
  std::vector<ClassifiedSet> mismatches;
  AuditSummary audit;
};

struct AuditOptions {
  std::uint64_t seed = 1;
  double rate = 0.001;
  std::int64_t max_lcm = 100'000;
};

// Families for three-element sets with m_A = 1: "u,v,u+v", "A∩2A", "sporadic".
std::vector<std::string> n3_families(const IntegerSet& a);
// Families for four-element sets with m_A <= 2/3: "u,2u,v,2v", "sporadic".
std::vector<std::string> n4_families(const IntegerSet& a);

ClassificationReport classify_n3(std::int64_t bound, const AuditOptions& audit = {});
ClassificationReport classify_n4(std::int64_t bound, const AuditOptions& audit = {});

nlohmann::json to_json(const ClassifiedSet& c);
nlohmann::json to_json(const ClassificationReport& r);
// Rows "1 4 5 8, 2/3, sporadic" under a header line.
std::string exceptions_csv(const ClassificationReport& r);

// First (j, d), d ascending then j ascending over 1 <= j <= d-1, with
// f_A(j/d) > threshold.
std::optional<std::pair<std::int64_t, std::int64_t>> grid_certificate(
    const IntegerSet& a, std::int64_t d_min, std::int64_t d_max, const ExactRational& threshold);

struct LemmaSweepReport {
  std::int64_t bound = 0;
  std::uint64_t gcd_checked = 0;
  std::vector<IntegerSet> gcd_failures;  // qualifying triples with m <= 1
  std::uint64_t size_checked = 0;
  std::vector<std::array<std::int64_t, 3>> size_failures;  // empty triple intersections
};

LemmaSweepReport lemma_sweeps(std::int64_t bound);
nlohmann::json to_json(const LemmaSweepReport& r);

struct LonelyRunnerResult {
  IntegerSet set;
  ExactRational m;
  bool exceptional = false;                // m <= 2/3
  std::optional<CirclePoint> theta;        // frac(theta x_j) in [1/6, 5/6) for all j
};

LonelyRunnerResult lonely_runner_check(std::span<const std::int64_t> speeds);
nlohmann::json to_json(const LonelyRunnerResult& r);

struct LonelySweepReport {
  std::int64_t max_speed = 0;
  std::uint64_t examined = 0;
  std::vector<LonelyRunnerResult> exceptional;
};

// Every 5-set of speeds <= max_speed whose doubled union has 10 elements.
LonelySweepReport lonely_runner_sweep(std::int64_t max_speed);

// --- minorant-criterion verifier ---------------------------------------------

struct Mc2Params {
  std::int64_t n = 2;
  std::int64_t S = 1;
  std::int64_t K = 10;
  ExactRational delta = make_rational(1, 10);
  std::int64_t T = 30;
  std::int64_t shards = 1;
  std::uint64_t budget = 1'000'000;
  double target_radius = 1e-7;
};

struct Mc2Failure {
  IntegerSet set;
  double minorant_max = 0;
  double certified_radius = 0;
  ExactRational m;
  // "minorant_too_weak": m_A >= S/3 + delta, a larger K may succeed.
  // "m_below_threshold": m_A < S/3 + delta, no minorant can pass.
  std::string category;
  bool violates_conjecture = false;  // m_A < S/3
};

struct Mc2NearMiss {
  IntegerSet set;
  double lower_bound = 0;
};

struct Mc2Report {
  std::uint64_t examined = 0;
  std::uint64_t passes = 0;
  std::vector<Mc2Failure> failures;
  std::vector<Mc2NearMiss> near_misses;  // passes with lower bound below threshold + delta
};

struct Mc2RunOptions {
  std::optional<std::filesystem::path> checkpoint;
  // Stop after this many shards have been processed in this call (simulates
  // an interruption); the checkpoint then holds the partial state.
  std::optional<std::int64_t> stop_after;
};

struct Mc2Outcome {
  Mc2Report report;
  bool complete = false;
  std::int64_t next_shard = 0;
};

std::string mc2_params_hash(const Mc2Params& p);
Mc2Outcome verify_mc2(const Mc2Params& p, const Mc2RunOptions& run = {});
nlohmann::json to_json(const Mc2Report& r);
Mc2Report mc2_report_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Mc2Params& p);

// --- base cases of the size reduction ------------------------------------------

struct BaseCaseReport {
  std::int64_t S = 0;
  std::int64_t N_S = 0;
  std::int64_t universe = 0;
  std::uint64_t examined = 0;
  std::uint64_t fast_path = 0;  // skipped by |A0|/6 - |A1|/3 > S/3
  std::uint64_t fast_path_audited = 0;
  std::uint64_t fast_path_audit_failures = 0;
  std::uint64_t verified = 0;
  std::vector<ClassifiedSet> failures;  // m_A < S/3
  std::uint64_t a1_bound_checked = 0;   // (n - 2S)/3 <= |A1|
  std::uint64_t a1_bound_violations = 0;
  std::uint64_t chains_checked = 0;
  std::uint64_t chain_violations = 0;
};

BaseCaseReport theorem_main_base(std::int64_t S, std::int64_t n_s, std::int64_t universe,
                                 std::uint64_t seed = 1);
nlohmann::json to_json(const BaseCaseReport& r);

// Shard-stable sampling decision for item `index`.
bool audit_pick(std::uint64_t seed, std::uint64_t index, double rate);

}  // namespace sumfree
