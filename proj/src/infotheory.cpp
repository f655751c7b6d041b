#include "qcoh/infotheory.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "qcoh/errors.hpp"

namespace qcoh {

namespace {

double xlog2x(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

} // namespace

double holevo_chi(const Ensemble& e) {
    require_valid(e);
    double avg = 0.0;
    for (std::size_t x = 0; x < e.members.size(); ++x)
        avg += e.probs[x] * von_neumann_entropy(e.members[x]);
    return von_neumann_entropy(e.mixture()) - avg;
}

double measured_mutual_info(const Ensemble& e, const Measurement& y) {
    require_valid(e);
    require_measurement(y);
    if (y.dim() != e.members[0].dim())
        throw DimensionError("measured_mutual_info: measurement dim " +
                             std::to_string(y.dim()) + " vs state dim " +
                             std::to_string(e.members[0].dim()));
    const std::size_t nx = e.members.size();
    const std::size_t nl = y.operators.size();
    // Joint distribution P(x, l); negatives are rounding dust, clamp.
    std::vector<std::vector<double>> joint(nx, std::vector<double>(nl, 0.0));
    for (std::size_t x = 0; x < nx; ++x) {
        std::vector<double> probs = measure_probs(y, e.members[x]);
        for (std::size_t l = 0; l < nl; ++l)
            joint[x][l] = e.probs[x] * std::max(probs[l], 0.0);
    }
    std::vector<double> marg_l(nl, 0.0);
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t l = 0; l < nl; ++l) marg_l[l] += joint[x][l];

    // H(X) + H(L) - H(X,L), all in bits.
    double h_joint = 0.0;
    for (const auto& row : joint)
        for (double p : row) h_joint -= xlog2x(p);
    double h_l = 0.0;
    for (double p : marg_l) h_l -= xlog2x(p);
    double h_x = 0.0;
    for (double p : e.probs) h_x -= xlog2x(p);
    return h_x + h_l - h_joint;
}

double dephased_mutual_info(const Ensemble& e) {
    require_valid(e);
    double avg = 0.0;
    for (std::size_t x = 0; x < e.members.size(); ++x)
        avg += e.probs[x] * dephased_entropy(e.members[x]);
    return dephased_entropy(e.mixture()) - avg;
}

double dephased_mutual_info(const Ensemble& e, const Mat& basis) {
    require_valid(e);
    double avg = 0.0;
    for (std::size_t x = 0; x < e.members.size(); ++x)
        avg += e.probs[x] * dephased_entropy(e.members[x], basis);
    return dephased_entropy(e.mixture(), basis) - avg;
}

namespace {

ChannelReport build_report(const Ensemble& e, double h_xy, double cl,
                           std::string basis_label) {
    ChannelReport r;
    r.chi = holevo_chi(e);
    r.h_xy = h_xy;
    r.il = r.chi - r.h_xy;
    r.cl = cl;
    r.residual = std::abs(r.il - r.cl);
    r.basis_label = std::move(basis_label);
    if (r.residual > 1e-7)
        throw ConsistencyError(
            "information loss and coherence loss disagree by " +
            std::to_string(r.residual) + "; the identity is algebraic, so this is a bug");
    return r;
}

} // namespace

ChannelReport information_loss(const Ensemble& e) {
    return build_report(e, dephased_mutual_info(e), coherence_loss(e), "computational");
}

ChannelReport information_loss(const Ensemble& e, const Mat& basis) {
    return build_report(e, dephased_mutual_info(e, basis), coherence_loss(e, basis),
                        "custom");
}

AccessibleInfoResult accessible_info(const Ensemble& e, const OptimizerOptions& opts) {
    require_valid(e);
    const int dim = e.members[0].dim();
    const auto objective = [&](const Mat& u) { return dephased_mutual_info(e, u); };
    BasisSearchResult search = maximize_over_bases(dim, objective, opts);
    AccessibleInfoResult out;
    out.value = search.value;
    out.best_basis = ProjectiveBasis{search.basis_unitary, "optimized"};
    out.n_restarts = search.n_restarts;
    out.converged = search.converged;
    return out;
}

double qubit_accessible_info_grid(const Ensemble& e, int n_theta, int n_phi) {
    require_valid(e);
    if (e.members[0].dim() != 2)
        throw DimensionError("qubit_accessible_info_grid: states must be qubits");
    if (n_theta < 2 || n_phi < 1)
        throw ValidationError("qubit_accessible_info_grid: grid too small");

    const std::size_t nx = e.members.size();
    // For a qubit basis {|u0>, |u1>}, H(X:Y) reduces to binary entropies of
    // q_x = <u0|rho_x|u0>. Pull out the matrix entries once.
    std::vector<double> r00(nx), r11(nx);
    std::vector<Cplx> r01(nx);
    for (std::size_t x = 0; x < nx; ++x) {
        const Mat& m = e.members[x].mat;
        r00[x] = m(0, 0).real();
        r11[x] = m(1, 1).real();
        r01[x] = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
    }

    double best = 0.0;
    for (int it = 0; it < n_theta; ++it) {
        const double theta = std::numbers::pi * it / (n_theta - 1);
        const double c2 = std::cos(0.5 * theta) * std::cos(0.5 * theta);
        const double s2 = 1.0 - c2;
        const double cs = std::cos(0.5 * theta) * std::sin(0.5 * theta);
        for (int ip = 0; ip < n_phi; ++ip) {
            const double phi = 2.0 * std::numbers::pi * ip / n_phi;
            const Cplx ephi(std::cos(phi), std::sin(phi));
            double q_bar = 0.0;
            double h_cond = 0.0;
            for (std::size_t x = 0; x < nx; ++x) {
                // q = <u0|rho|u0> with |u0> = (cos t/2, e^{i phi} sin t/2).
                double q = c2 * r00[x] + s2 * r11[x] +
                           2.0 * cs * (r01[x] * ephi).real();
                q = std::min(std::max(q, 0.0), 1.0);
                q_bar += e.probs[x] * q;
                h_cond += e.probs[x] * binary_entropy(q);
            }
            const double value = binary_entropy(q_bar) - h_cond;
            if (value > best) best = value;
        }
    }
    return best;
}

} // namespace qcoh
