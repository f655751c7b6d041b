#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcoh/errors.hpp"
#include "qcoh/verify.hpp"

using namespace qcoh;

namespace {

VerifyConfig small_config(int n, std::uint64_t seed) {
    VerifyConfig cfg;
    cfg.n_instances = n;
    cfg.seed = seed;
    cfg.opts.restarts = 8;
    cfg.opts.seed = seed;
    return cfg;
}

} // namespace

TEST_CASE("information loss matches coherence loss on sampled ensembles") {
    VerificationReport r = verify_theorem1(small_config(25, 101));
    CHECK(r.suite == "theorem1");
    CHECK(r.n_instances == 25);
    CHECK(r.all_passed());
    CHECK(r.counterexamples.empty());
    REQUIRE(r.worst.count("max_abs_il_minus_cl") == 1);
    CHECK(r.worst.at("max_abs_il_minus_cl") <= 1e-9);
}

TEST_CASE("incoherent instruments never beat the dephased information") {
    VerificationReport r = verify_lemma1(small_config(25, 103));
    CHECK(r.suite == "lemma1");
    CHECK(r.all_passed());
    REQUIRE(r.worst.count("max_identity_residual") == 1);
    REQUIRE(r.worst.count("max_si_excess") == 1);
    CHECK(r.worst.at("max_identity_residual") <= 1e-9);
    CHECK(r.worst.at("max_si_excess") <= 1e-8);
}

TEST_CASE("average B coherence dominates local coherence across all three families") {
    VerificationReport r = verify_lemma2(small_config(25, 105));
    CHECK(r.suite == "lemma2");
    // 25 random + 5 orthogonal + 5 overlapping
    CHECK(r.n_instances == 35);
    CHECK(r.all_passed());
    CHECK(r.worst.at("min_slack_random") >= -1e-8);
    CHECK(r.worst.at("max_slack_orthogonal") <= 1e-7);
    CHECK(r.worst.at("min_slack_overlapping") >= 1e-4);
}

TEST_CASE("the four complementarity slacks stay nonnegative on sampled specs") {
    VerificationReport r = verify_eq5to8(small_config(10, 107));
    CHECK(r.suite == "eq5to8");
    CHECK(r.all_passed());
    for (const char* key :
         {"min_slack_eq5", "min_slack_eq6", "min_slack_eq7", "min_slack_eq8"}) {
        REQUIRE(r.worst.count(key) == 1);
        CHECK(r.worst.at(key) >= -1e-7);
    }
}

TEST_CASE("reports are deterministic for a fixed seed") {
    VerificationReport a = verify_theorem1(small_config(10, 109));
    VerificationReport b = verify_theorem1(small_config(10, 109));
    CHECK(a.n_passed == b.n_passed);
    CHECK(a.worst == b.worst);
    CHECK(a.counterexamples.size() == b.counterexamples.size());

    VerificationReport c = verify_eq5to8(small_config(5, 111));
    VerificationReport d = verify_eq5to8(small_config(5, 111));
    CHECK(c.worst == d.worst);
}

TEST_CASE("changing the seed changes the sampled instances") {
    // Use a continuous margin: identity residuals can saturate at the same
    // floating-point quantum, but the overlapping-family slack is an O(1)
    // function of the draw.
    VerificationReport a = verify_lemma2(small_config(10, 1));
    VerificationReport b = verify_lemma2(small_config(10, 2));
    CHECK(a.worst.at("min_slack_overlapping") != b.worst.at("min_slack_overlapping"));
}

TEST_CASE("the suite dispatcher runs everything and rejects unknown names") {
    std::vector<VerificationReport> all = run_suite("all", small_config(2, 113));
    REQUIRE(all.size() == 4);
    CHECK(all[0].suite == "theorem1");
    CHECK(all[1].suite == "lemma1");
    CHECK(all[2].suite == "lemma2");
    CHECK(all[3].suite == "eq5to8");
    for (const auto& r : all) CHECK(r.all_passed());

    std::vector<VerificationReport> one = run_suite("lemma1", small_config(3, 115));
    REQUIRE(one.size() == 1);
    CHECK(one[0].suite == "lemma1");

    CHECK_THROWS_AS(run_suite("bogus", small_config(1, 0)), ValidationError);
}

TEST_CASE("reports serialize with every field present") {
    VerificationReport r = verify_lemma1(small_config(5, 117));
    nlohmann::json j = to_json(r);
    CHECK(j.at("suite") == "lemma1");
    CHECK(j.at("n_instances").get<int>() == 5);
    CHECK(j.at("n_passed").get<int>() == 5);
    CHECK(j.at("all_passed").get<bool>());
    CHECK(j.contains("worst"));
    CHECK(j.contains("wall_time_s"));
    CHECK(j.at("seed").get<std::uint64_t>() == 117);
    CHECK(j.at("counterexamples").is_array());
    CHECK(j.at("counterexamples").empty());
}
