#include "qcoh/verify.hpp"

#include <chrono>
#include <cmath>

#include "qcoh/coherence.hpp"
#include "qcoh/discord.hpp"
#include "qcoh/errors.hpp"
#include "qcoh/infotheory.hpp"
#include "qcoh/io.hpp"
#include "qcoh/operations.hpp"
#include "qcoh/states.hpp"

namespace qcoh {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

std::uint64_t instance_seed(std::uint64_t suite_seed, int index) {
    return splitmix64(suite_seed + static_cast<std::uint64_t>(index));
}

double elapsed_s(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void track_max(std::map<std::string, double>& worst, const std::string& key, double v) {
    auto it = worst.find(key);
    if (it == worst.end() || v > it->second) worst[key] = v;
}

void track_min(std::map<std::string, double>& worst, const std::string& key, double v) {
    auto it = worst.find(key);
    if (it == worst.end() || v < it->second) worst[key] = v;
}

json inequality_to_json(const InequalityRecord& r) {
    return json{{"inequality", r.inequality}, {"lhs", r.lhs},   {"rhs", r.rhs},
                {"slack", r.slack},           {"basis", r.basis}, {"seed", r.seed},
                {"converged", r.converged}};
}

} // namespace

VerificationReport verify_theorem1(const VerifyConfig& cfg) {
    const auto t0 = Clock::now();
    VerificationReport rep;
    rep.suite = "theorem1";
    rep.seed = cfg.seed;
    rep.n_instances = cfg.n_instances < 0 ? 1000 : cfg.n_instances;

    for (int i = 0; i < rep.n_instances; ++i) {
        const std::uint64_t si = instance_seed(cfg.seed, i);
        Rng rng(si);
        try {
            const int dim = 2 + rng.uniform_int(0, 2);
            const int members = 1 + rng.uniform_int(0, 4);
            Ensemble e = random_ensemble(dim, members, rng);
            double max_residual = 0.0;
            for (int b = 0; b < 3; ++b) {
                ChannelReport cr = b == 0 ? information_loss(e)
                                          : information_loss(e, random_unitary(dim, rng));
                max_residual = std::max(max_residual, cr.residual);
            }
            track_max(rep.worst, "max_abs_il_minus_cl", max_residual);
            if (max_residual <= 1e-9) {
                ++rep.n_passed;
            } else {
                rep.counterexamples.push_back(json{{"suite", rep.suite},
                                                   {"index", i},
                                                   {"seed", si},
                                                   {"residual", max_residual},
                                                   {"ensemble", to_json(e)}});
            }
        } catch (const Error& err) {
            rep.counterexamples.push_back(
                json{{"suite", rep.suite}, {"index", i}, {"seed", si}, {"error", err.what()}});
        }
    }
    rep.wall_time_s = elapsed_s(t0);
    return rep;
}

VerificationReport verify_lemma1(const VerifyConfig& cfg) {
    const auto t0 = Clock::now();
    VerificationReport rep;
    rep.suite = "lemma1";
    rep.seed = cfg.seed;
    rep.n_instances = cfg.n_instances < 0 ? 1000 : cfg.n_instances;

    for (int i = 0; i < rep.n_instances; ++i) {
        const std::uint64_t si = instance_seed(cfg.seed, i);
        Rng rng(si);
        try {
            const int dim = 2 + rng.uniform_int(0, 2);
            const int members = 1 + rng.uniform_int(0, 3);
            Ensemble e = random_ensemble(dim, members, rng);

            const double closed = dephased_mutual_info(e);
            const double measured = measured_mutual_info(
                e, projective_measurement(ProjectiveBasis::computational(dim)));
            const double residual = std::abs(closed - measured);
            track_max(rep.worst, "max_identity_residual", residual);

            // No strictly incoherent instrument extracts more than the
            // reference-basis measurement: its outcome statistics factor
            // through the state's diagonal.
            const int n_ops = 1 + rng.uniform_int(0, dim);
            Measurement si_instr = random_strictly_incoherent(dim, n_ops, rng);
            const bool generator_ok =
                classify_strictly_incoherent(si_instr).is_strictly_incoherent;
            const double excess = measured_mutual_info(e, si_instr) - closed;
            track_max(rep.worst, "max_si_excess", excess);

            if (residual <= 1e-9 && excess <= 1e-8 && generator_ok) {
                ++rep.n_passed;
            } else {
                rep.counterexamples.push_back(json{{"suite", rep.suite},
                                                   {"index", i},
                                                   {"seed", si},
                                                   {"identity_residual", residual},
                                                   {"si_excess", excess},
                                                   {"si_generator_ok", generator_ok},
                                                   {"ensemble", to_json(e)}});
            }
        } catch (const Error& err) {
            rep.counterexamples.push_back(
                json{{"suite", rep.suite}, {"index", i}, {"seed", si}, {"error", err.what()}});
        }
    }
    rep.wall_time_s = elapsed_s(t0);
    return rep;
}

namespace {

SeparableSpec orthogonal_a_spec(int dim_a, int dim_b, Rng& rng) {
    const int n_terms = 1 + rng.uniform_int(0, dim_a - 1);
    Mat u = random_unitary(dim_a, rng);
    SeparableSpec spec;
    spec.probs = random_simplex(n_terms, rng);
    for (int x = 0; x < n_terms; ++x) {
        Vec col = u.col(x);
        spec.a_parts.push_back(DensityMatrix{col * col.adjoint()});
        spec.b_parts.push_back(random_density(dim_b, 1 + rng.uniform_int(0, dim_b - 1), rng));
    }
    return spec;
}

// Identical A factors make the compiled state a product, so its local
// coherence collapses to the mixture's while the average stays put; the
// slack is then the coherence loss of the B ensemble. Resample until that
// loss clears the floor (almost every draw does).
SeparableSpec overlapping_a_spec(int dim_a, int dim_b, Rng& rng, double floor) {
    SeparableSpec best;
    double best_slack = -1.0;
    for (int attempt = 0; attempt < 100; ++attempt) {
        DensityMatrix a = random_pure(dim_a, rng);
        SeparableSpec spec;
        spec.probs = {0.5, 0.5};
        spec.a_parts = {a, a};
        spec.b_parts = {random_pure(dim_b, rng), random_pure(dim_b, rng)};
        const double slack = check_lemma2(spec).slack;
        if (slack > best_slack) {
            best_slack = slack;
            best = spec;
        }
        if (best_slack >= 2.0 * floor) break;
    }
    return best;
}

} // namespace

VerificationReport verify_lemma2(const VerifyConfig& cfg) {
    const auto t0 = Clock::now();
    VerificationReport rep;
    rep.suite = "lemma2";
    rep.seed = cfg.seed;
    const int n_random = cfg.n_instances < 0 ? 500 : cfg.n_instances;
    const int n_family = std::max(1, n_random / 5);
    rep.n_instances = n_random + 2 * n_family;
    constexpr double kOverlapFloor = 1e-4;

    int index = 0;
    for (int i = 0; i < n_random; ++i, ++index) {
        const std::uint64_t si = instance_seed(cfg.seed, index);
        Rng rng(si);
        try {
            const int n_terms = 1 + rng.uniform_int(0, 3);
            SeparableSpec spec = random_separable(cfg.dim_a, cfg.dim_b, n_terms, rng);
            Lemma2Record r = check_lemma2(spec);
            track_min(rep.worst, "min_slack_random", r.slack);
            if (r.slack >= -1e-8) {
                ++rep.n_passed;
            } else {
                rep.counterexamples.push_back(json{{"suite", rep.suite},
                                                   {"index", index},
                                                   {"seed", si},
                                                   {"family", "random"},
                                                   {"slack", r.slack},
                                                   {"spec", to_json(spec)}});
            }
        } catch (const Error& err) {
            rep.counterexamples.push_back(json{
                {"suite", rep.suite}, {"index", index}, {"seed", si}, {"error", err.what()}});
        }
    }

    for (int i = 0; i < n_family; ++i, ++index) {
        const std::uint64_t si = instance_seed(cfg.seed, index);
        Rng rng(si);
        try {
            SeparableSpec spec = orthogonal_a_spec(cfg.dim_a, cfg.dim_b, rng);
            Lemma2Record r = check_lemma2(spec);
            track_max(rep.worst, "max_slack_orthogonal", r.slack);
            if (r.slack <= 1e-7) {
                ++rep.n_passed;
            } else {
                rep.counterexamples.push_back(json{{"suite", rep.suite},
                                                   {"index", index},
                                                   {"seed", si},
                                                   {"family", "orthogonal"},
                                                   {"slack", r.slack},
                                                   {"spec", to_json(spec)}});
            }
        } catch (const Error& err) {
            rep.counterexamples.push_back(json{
                {"suite", rep.suite}, {"index", index}, {"seed", si}, {"error", err.what()}});
        }
    }

    for (int i = 0; i < n_family; ++i, ++index) {
        const std::uint64_t si = instance_seed(cfg.seed, index);
        Rng rng(si);
        try {
            SeparableSpec spec = overlapping_a_spec(cfg.dim_a, cfg.dim_b, rng, kOverlapFloor);
            Lemma2Record r = check_lemma2(spec);
            track_min(rep.worst, "min_slack_overlapping", r.slack);
            if (r.slack >= kOverlapFloor) {
                ++rep.n_passed;
            } else {
                rep.counterexamples.push_back(json{{"suite", rep.suite},
                                                   {"index", index},
                                                   {"seed", si},
                                                   {"family", "overlapping"},
                                                   {"slack", r.slack},
                                                   {"spec", to_json(spec)}});
            }
        } catch (const Error& err) {
            rep.counterexamples.push_back(json{
                {"suite", rep.suite}, {"index", index}, {"seed", si}, {"error", err.what()}});
        }
    }

    rep.wall_time_s = elapsed_s(t0);
    return rep;
}

VerificationReport verify_eq5to8(const VerifyConfig& cfg) {
    const auto t0 = Clock::now();
    VerificationReport rep;
    rep.suite = "eq5to8";
    rep.seed = cfg.seed;
    rep.n_instances = cfg.n_instances < 0 ? 500 : cfg.n_instances;
    constexpr double kSlackTol = -1e-7;

    for (int i = 0; i < rep.n_instances; ++i) {
        const std::uint64_t si = instance_seed(cfg.seed, i);
        Rng rng(si);
        try {
            const int n_terms = 1 + rng.uniform_int(0, 3);
            SeparableSpec spec = random_separable(cfg.dim_a, cfg.dim_b, n_terms, rng);
            OptimizerOptions opts = cfg.opts;
            opts.seed = splitmix64(si);
            ComplementarityReport r = check_complementarity(spec, opts, si);

            track_min(rep.worst, "min_slack_eq5", r.eq5.slack);
            track_min(rep.worst, "min_slack_eq6", r.eq6.slack);
            track_min(rep.worst, "min_slack_eq7", r.eq7.slack);
            track_min(rep.worst, "min_slack_eq8", r.eq8.slack);

            const bool ok = r.eq5.slack >= kSlackTol && r.eq6.slack >= kSlackTol &&
                            r.eq7.slack >= kSlackTol && r.eq8.slack >= kSlackTol;
            if (ok) {
                ++rep.n_passed;
            } else {
                json records = json::array();
                for (const InequalityRecord* ir : {&r.eq5, &r.eq6, &r.eq7, &r.eq8})
                    if (ir->slack < kSlackTol) records.push_back(inequality_to_json(*ir));
                rep.counterexamples.push_back(json{{"suite", rep.suite},
                                                   {"index", i},
                                                   {"seed", si},
                                                   {"violations", records},
                                                   {"chi", r.chi},
                                                   {"h_at_ymax", r.h_at_ymax},
                                                   {"discord", r.discord},
                                                   {"delta_max_alt", r.delta_max_alt},
                                                   {"low_confidence", r.low_confidence},
                                                   {"spec", to_json(spec)}});
            }
        } catch (const Error& err) {
            rep.counterexamples.push_back(
                json{{"suite", rep.suite}, {"index", i}, {"seed", si}, {"error", err.what()}});
        }
    }
    rep.wall_time_s = elapsed_s(t0);
    return rep;
}

std::vector<VerificationReport> verify_all(const VerifyConfig& cfg) {
    return {verify_theorem1(cfg), verify_lemma1(cfg), verify_lemma2(cfg),
            verify_eq5to8(cfg)};
}

std::vector<VerificationReport> run_suite(const std::string& name, const VerifyConfig& cfg) {
    if (name == "theorem1") return {verify_theorem1(cfg)};
    if (name == "lemma1") return {verify_lemma1(cfg)};
    if (name == "lemma2") return {verify_lemma2(cfg)};
    if (name == "eq5to8") return {verify_eq5to8(cfg)};
    if (name == "all") return verify_all(cfg);
    throw ValidationError("unknown suite '" + name +
                          "'; expected theorem1, lemma1, lemma2, eq5to8, or all");
}

nlohmann::json to_json(const VerificationReport& r) {
    return json{{"suite", r.suite},
                {"n_instances", r.n_instances},
                {"n_passed", r.n_passed},
                {"all_passed", r.all_passed()},
                {"worst", r.worst},
                {"counterexamples", r.counterexamples},
                {"wall_time_s", r.wall_time_s},
                {"seed", r.seed}};
}

} // namespace qcoh
