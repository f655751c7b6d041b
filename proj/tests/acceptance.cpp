// Acceptance gate: runs every shipping criterion at full size and prints
// one [PASS]/[FAIL] line per criterion. Exits 0 only if all pass.

#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qcoh/coherence.hpp"
#include "qcoh/discord.hpp"
#include "qcoh/infotheory.hpp"
#include "qcoh/operations.hpp"
#include "qcoh/states.hpp"
#include "qcoh/verify.hpp"

using namespace qcoh;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string sci(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(2) << v;
    return os.str();
}

std::string fixed6(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << v;
    return os.str();
}

int g_failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << " — " << detail << "\n";
    if (!ok) ++g_failures;
}

DensityMatrix basis_state(int dim, int i) {
    Mat m = Mat::Zero(dim, dim);
    m(i, i) = 1.0;
    return {m};
}

DensityMatrix plus_state() {
    Mat m(2, 2);
    m << Cplx(0.5), Cplx(0.5), Cplx(0.5), Cplx(0.5);
    return {m};
}

Ensemble zero_plus_ensemble() {
    return Ensemble{{0.5, 0.5}, {basis_state(2, 0), plus_state()}};
}

BipartiteState bell_state() {
    Vec psi = Vec::Zero(4);
    psi(0) = 1.0 / std::sqrt(2.0);
    psi(3) = 1.0 / std::sqrt(2.0);
    return BipartiteState{2, 2, DensityMatrix{psi * psi.adjoint()}};
}

VerifyConfig config(int n, int restarts) {
    VerifyConfig cfg;
    cfg.n_instances = n;
    cfg.seed = 0;
    cfg.opts.restarts = restarts;
    cfg.opts.seed = 0;
    return cfg;
}

// Criterion: information loss equals coherence loss on 1000 random
// ensembles (dims 2-4, 1-5 members), three bases each, within 1e-9,
// in under ten seconds.
void criterion_information_loss_identity() {
    const auto t0 = Clock::now();
    VerificationReport r = verify_theorem1(config(1000, 16));
    const double elapsed = seconds_since(t0);
    const double worst = r.worst.at("max_abs_il_minus_cl");
    const bool ok = r.all_passed() && worst <= 1e-9 && elapsed < 10.0;
    report("information loss equals coherence loss (1000 ensembles x 3 bases)", ok,
           std::to_string(r.n_passed) + "/" + std::to_string(r.n_instances) +
               " passed, max |IL-CL| = " + sci(worst) + ", " + fixed6(elapsed) + " s");
}

// Criterion: the dephased closed form matches the joint-distribution mutual
// information within 1e-9 on 1000 instances, and the strictly incoherent
// instrument drawn for each instance never beats it by more than 1e-8.
void criterion_incoherent_measurements_cannot_beat_dephasing() {
    VerificationReport r = verify_lemma1(config(1000, 16));
    const double identity = r.worst.at("max_identity_residual");
    const double excess = r.worst.at("max_si_excess");
    const bool ok = r.all_passed() && identity <= 1e-9 && excess <= 1e-8;
    report("incoherent instruments never beat the dephased information (1000 instances)", ok,
           "max closed-form residual = " + sci(identity) +
               ", max incoherent-instrument excess = " + sci(excess));
}

// Criterion: average B-side coherence dominates the local coherence of the
// compiled separable state: 500 random specs stay above -1e-8 slack, 100
// orthogonal-A constructions sit at equality (<= 1e-7), 100 overlapping-A
// constructions stay bounded away from it (>= 1e-4).
void criterion_local_coherence_bound() {
    VerificationReport r = verify_lemma2(config(500, 16));
    const double random_min = r.worst.at("min_slack_random");
    const double orth_max = r.worst.at("max_slack_orthogonal");
    const double overlap_min = r.worst.at("min_slack_overlapping");
    const bool ok = r.all_passed() && random_min >= -1e-8 && orth_max <= 1e-7 &&
                    overlap_min >= 1e-4;
    report("average B coherence dominates local coherence, equality iff orthogonal A parts",
           ok,
           "min random slack = " + sci(random_min) + ", max orthogonal slack = " +
               sci(orth_max) + ", min overlapping slack = " + sci(overlap_min));
}

// Criterion: the four complementarity slacks (two fixed-basis bounds, the
// bound at the best measurement, and discord + accessible information
// against the Holevo quantity) stay above -1e-7 on 500 random separable
// 2x2 specs with a 32-restart optimizer, with zero counterexamples, in
// under a minute.
void criterion_complementarity_chain() {
    const auto t0 = Clock::now();
    VerificationReport r = verify_eq5to8(config(500, 32));
    const double elapsed = seconds_since(t0);
    double min_slack = 0.0;
    for (const char* key :
         {"min_slack_eq5", "min_slack_eq6", "min_slack_eq7", "min_slack_eq8"})
        min_slack = std::min(min_slack, r.worst.at(key));
    const bool ok = r.all_passed() && r.counterexamples.empty() && min_slack >= -1e-7 &&
                    elapsed < 60.0;
    report("discord plus accessible information never exceeds the Holevo bound (500 specs)",
           ok,
           std::to_string(r.n_passed) + "/" + std::to_string(r.n_instances) +
               " passed, min slack = " + sci(min_slack) + ", " +
               std::to_string(r.counterexamples.size()) + " counterexamples, " +
               fixed6(elapsed) + " s");
}

// Criterion: closed-form anchors. One maximally coherent qubit bit; the
// half-zero/half-plus ensemble's Holevo quantity and loss; Bell-state
// discord and mutual information; the erasing channel reproducing
// dephasing on random qubit states.
void criterion_closed_form_anchors() {
    bool ok = true;
    std::ostringstream detail;

    const double c_r_plus = relative_entropy_coherence(plus_state());
    ok = ok && std::abs(c_r_plus - 1.0) <= 1e-9;
    detail << "C_r(plus) = " << fixed6(c_r_plus);

    const Ensemble zp = zero_plus_ensemble();
    const double chi = holevo_chi(zp);
    ChannelReport loss = information_loss(zp);
    ok = ok && std::abs(chi - 0.600876) <= 1e-6;
    ok = ok && std::abs(loss.il - 0.289598) <= 1e-6;
    ok = ok && std::abs(loss.cl - 0.289598) <= 1e-6;
    ok = ok && loss.residual <= 1e-9;
    detail << ", chi = " << fixed6(chi) << ", IL = " << fixed6(loss.il)
           << ", CL = " << fixed6(loss.cl);

    OptimizerOptions opts;
    opts.restarts = 16;
    opts.seed = 0;
    OptimizedDiscord bell = quantum_discord(bell_state(), opts);
    const double i_ab = mutual_information(bell_state());
    ok = ok && std::abs(bell.value - 1.0) <= 1e-6;
    ok = ok && std::abs(i_ab - 2.0) <= 1e-9;
    detail << ", Bell D = " << fixed6(bell.value) << ", Bell I = " << fixed6(i_ab);

    Rng rng(99);
    double worst_gap = 0.0;
    for (int i = 0; i < 100; ++i) {
        DensityMatrix rho = random_density(2, 1 + rng.uniform_int(0, 1), rng);
        auto [out, mix] = coherence_erasing_channel(rho);
        worst_gap =
            std::max(worst_gap, (out.mat - dephase(rho.mat)).cwiseAbs().maxCoeff());
    }
    ok = ok && worst_gap <= 1e-10;
    detail << ", max erase gap = " << sci(worst_gap);

    report("closed-form anchors (coherent qubit, two-state ensemble, Bell pair, erasure)",
           ok, detail.str());
}

// Criterion: on 50 random qubit ensembles the multi-start basis search
// agrees with a 400x800 Bloch-angle grid scan within 1e-4 bits.
void criterion_optimizer_matches_grid_oracle() {
    Rng rng(7);
    OptimizerOptions opts;
    opts.restarts = 32;
    opts.seed = 0;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        Ensemble e = random_ensemble(2, 1 + rng.uniform_int(0, 3), rng);
        const double searched = accessible_info(e, opts).value;
        const double scanned = qubit_accessible_info_grid(e);
        worst = std::max(worst, std::abs(searched - scanned));
    }
    report("multi-start search matches the qubit grid oracle (50 ensembles)",
           worst <= 1e-4, "max |search - grid| = " + sci(worst) + " bits");
}

} // namespace

int main() {
    const auto t0 = Clock::now();
    try {
        criterion_information_loss_identity();
        criterion_incoherent_measurements_cannot_beat_dephasing();
        criterion_local_coherence_bound();
        criterion_complementarity_chain();
        criterion_closed_form_anchors();
        criterion_optimizer_matches_grid_oracle();
    } catch (const std::exception& e) {
        std::cout << "[FAIL] acceptance run aborted — " << e.what() << "\n";
        return 1;
    }
    std::cout << (g_failures == 0 ? "all criteria passed" : "criteria failed") << " ("
              << fixed6(seconds_since(t0)) << " s total)\n";
    return g_failures == 0 ? 0 : 1;
}
