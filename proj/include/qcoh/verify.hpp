#pragma once

// Randomized verification suites. Each suite draws seeded random instances,
// checks the identities/inequalities the library is built around, and
// returns a report with the worst margins seen plus a replayable JSON
// counterexample for every failing instance. Instance i uses the seed
// splitmix64(suite_seed + i), so single instances can be re-run alone.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcoh/optimize.hpp"

namespace qcoh {

struct VerifyConfig {
    int n_instances = -1; // -1 = per-suite default
    std::uint64_t seed = 0;
    int dim_a = 2;
    int dim_b = 2;
    OptimizerOptions opts{.restarts = 16};
};

struct VerificationReport {
    std::string suite;
    int n_instances = 0;
    int n_passed = 0;
    // Worst margin per named check; keys beginning with "min_" must stay
    // above the check's tolerance, keys with "max_" below it.
    std::map<std::string, double> worst;
    std::vector<nlohmann::json> counterexamples;
    double wall_time_s = 0.0;
    std::uint64_t seed = 0;

    bool all_passed() const { return n_passed == n_instances; }
};

/// Information loss equals coherence loss: |IL - CL| <= 1e-9 on random
/// ensembles (dim 2-4, 1-5 members), three bases each.
VerificationReport verify_theorem1(const VerifyConfig& cfg);

/// Dephased closed form equals the measured mutual information in the
/// reference basis within 1e-9, and no strictly incoherent instrument
/// beats the dephased value by more than 1e-8.
VerificationReport verify_lemma1(const VerifyConfig& cfg);

/// Average B-side coherence dominates local coherence: random specs stay
/// above -1e-8 slack, orthogonal-A constructions sit at equality, and
/// overlapping-A constructions with coherent distinct B parts stay
/// bounded away from it.
VerificationReport verify_lemma2(const VerifyConfig& cfg);

/// The four complementarity slacks are nonnegative (>= -1e-7) on random
/// separable specs.
VerificationReport verify_eq5to8(const VerifyConfig& cfg);

/// Runs all four suites with the same config.
std::vector<VerificationReport> verify_all(const VerifyConfig& cfg);

/// Dispatch by suite name: theorem1, lemma1, lemma2, eq5to8, or all.
std::vector<VerificationReport> run_suite(const std::string& name, const VerifyConfig& cfg);

nlohmann::json to_json(const VerificationReport& r);

} // namespace qcoh
