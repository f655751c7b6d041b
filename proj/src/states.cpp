#include "qcoh/states.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace qcoh {

namespace {

constexpr double kHermTol = 1e-9;
constexpr double kTraceTol = 1e-9;
constexpr double kEigTol = 1e-9;
constexpr double kProbSumTol = 1e-9;

} // namespace

DensityMatrix Ensemble::mixture() const {
    Mat acc = Mat::Zero(dim(), dim());
    for (std::size_t i = 0; i < members.size(); ++i) acc += probs[i] * members[i].mat;
    return {acc};
}

DensityMatrix BipartiteState::reduced_a() const {
    return {partial_trace(state.mat, dim_a, dim_b, Subsystem::A)};
}

DensityMatrix BipartiteState::reduced_b() const {
    return {partial_trace(state.mat, dim_a, dim_b, Subsystem::B)};
}

std::string ValidationVerdict::summary() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (std::size_t i = 0; i < issues.size(); ++i) {
        if (i) os << "; ";
        os << issues[i].what << " (deviation " << issues[i].deviation << ")";
    }
    return os.str();
}

ValidationVerdict validate(const DensityMatrix& rho) {
    ValidationVerdict v;
    if (rho.mat.rows() != rho.mat.cols() || rho.mat.rows() == 0) {
        v.issues.push_back({"matrix not square and nonempty", 0.0});
        return v;
    }
    if (!all_finite(rho.mat)) {
        v.issues.push_back({"non-finite entries", 0.0});
        return v;
    }
    const double herm = hermiticity_defect(rho.mat);
    if (herm > kHermTol) v.issues.push_back({"not Hermitian", herm});
    const double tr_dev = std::abs(rho.mat.trace().real() - 1.0) +
                          std::abs(rho.mat.trace().imag());
    if (tr_dev > kTraceTol) v.issues.push_back({"trace not 1", tr_dev});
    if (herm <= kHermTol) {
        const Eigen::VectorXd ev = hermitian_eigenvalues(rho.mat);
        const double min_ev = ev(ev.size() - 1);
        if (min_ev < -kEigTol) v.issues.push_back({"not positive semidefinite", -min_ev});
    }
    return v;
}

ValidationVerdict validate(const Ensemble& e) {
    ValidationVerdict v;
    if (e.members.empty()) {
        v.issues.push_back({"ensemble has no members", 0.0});
        return v;
    }
    if (e.probs.size() != e.members.size()) {
        v.issues.push_back({"probs/members length mismatch", 0.0});
        return v;
    }
    double sum = 0.0;
    for (double p : e.probs) {
        if (p < 0.0) v.issues.push_back({"negative probability", -p});
        sum += p;
    }
    if (std::abs(sum - 1.0) > kProbSumTol)
        v.issues.push_back({"probabilities do not sum to 1", std::abs(sum - 1.0)});
    const int d = e.members.front().dim();
    for (std::size_t i = 0; i < e.members.size(); ++i) {
        if (e.members[i].dim() != d) {
            v.issues.push_back({"member dimension mismatch", 0.0});
            break;
        }
    }
    for (std::size_t i = 0; i < e.members.size(); ++i) {
        ValidationVerdict mv = validate(e.members[i]);
        for (auto& issue : mv.issues)
            v.issues.push_back({"member " + std::to_string(i) + ": " + issue.what,
                                issue.deviation});
    }
    return v;
}

ValidationVerdict validate(const BipartiteState& s) {
    ValidationVerdict v = validate(s.state);
    if (s.dim_a < 1 || s.dim_b < 1 ||
        static_cast<Eigen::Index>(s.dim_a) * s.dim_b != s.state.mat.rows())
        v.issues.push_back({"dims do not multiply to state dimension", 0.0});
    return v;
}

ValidationVerdict validate(const SeparableSpec& spec) {
    ValidationVerdict v;
    if (spec.probs.empty() || spec.probs.size() != spec.a_parts.size() ||
        spec.probs.size() != spec.b_parts.size()) {
        v.issues.push_back({"terms must be nonempty and of equal length", 0.0});
        return v;
    }
    double sum = 0.0;
    for (double p : spec.probs) {
        if (p < 0.0) v.issues.push_back({"negative probability", -p});
        sum += p;
    }
    if (std::abs(sum - 1.0) > kProbSumTol)
        v.issues.push_back({"probabilities do not sum to 1", std::abs(sum - 1.0)});
    const int da = spec.dim_a();
    const int db = spec.dim_b();
    for (int x = 0; x < spec.size(); ++x) {
        if (spec.a_parts[x].dim() != da || spec.b_parts[x].dim() != db) {
            v.issues.push_back({"factor dimension mismatch at term " + std::to_string(x), 0.0});
            return v;
        }
        ValidationVerdict av = validate(spec.a_parts[x]);
        for (auto& issue : av.issues)
            v.issues.push_back({"a[" + std::to_string(x) + "]: " + issue.what, issue.deviation});
        ValidationVerdict bv = validate(spec.b_parts[x]);
        for (auto& issue : bv.issues)
            v.issues.push_back({"b[" + std::to_string(x) + "]: " + issue.what, issue.deviation});
    }
    return v;
}

namespace {

template <typename T>
void require_valid_impl(const T& x, const char* label) {
    ValidationVerdict v = validate(x);
    if (!v.ok()) throw ValidationError(std::string(label) + ": " + v.summary());
}

} // namespace

void require_valid(const DensityMatrix& rho) { require_valid_impl(rho, "density matrix"); }
void require_valid(const Ensemble& e) { require_valid_impl(e, "ensemble"); }
void require_valid(const BipartiteState& s) { require_valid_impl(s, "bipartite state"); }
void require_valid(const SeparableSpec& spec) { require_valid_impl(spec, "separable spec"); }

// ---------------------------------------------------------------------------
// Random generation

double Rng::uniform() {
    // 53-bit mantissa; reject exact zero so log(u) is safe.
    for (;;) {
        double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
        if (u > 0.0) return u;
    }
}

int Rng::uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(eng_() % span);
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * M_PI * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

DensityMatrix random_density(int dim, int rank, Rng& rng) {
    if (dim < 1) throw DimensionError("random_density: dim must be positive");
    if (rank < 1 || rank > dim)
        throw DimensionError("random_density: rank must lie in [1, dim]");
    Mat g(dim, rank);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < rank; ++j) g(i, j) = rng.cnormal();
    Mat rho = g * g.adjoint();
    rho /= rho.trace().real();
    // Exact Hermiticity regardless of rounding in the product.
    rho = 0.5 * (rho + rho.adjoint().eval());
    return {rho};
}

std::vector<double> random_simplex(int n, Rng& rng) {
    std::vector<double> p(n);
    double sum = 0.0;
    for (double& v : p) {
        v = -std::log(rng.uniform());
        sum += v;
    }
    for (double& v : p) v /= sum;
    return p;
}

Ensemble random_ensemble(int dim, int n_members, Rng& rng) {
    if (n_members < 1) throw DimensionError("random_ensemble: need at least one member");
    Ensemble e;
    e.probs = random_simplex(n_members, rng);
    e.members.reserve(n_members);
    for (int i = 0; i < n_members; ++i)
        e.members.push_back(random_density(dim, rng.uniform_int(1, dim), rng));
    return e;
}

Mat random_unitary(int dim, Rng& rng) {
    Mat g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = rng.cnormal();
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix phases so the distribution is Haar, not QR-convention dependent.
    for (Eigen::Index k = 0; k < dim; ++k) {
        Cplx d = r(k, k);
        q.col(k) *= (std::abs(d) > 0.0) ? d / std::abs(d) : Cplx(1.0, 0.0);
    }
    return q;
}

DensityMatrix random_pure(int dim, Rng& rng) { return random_density(dim, 1, rng); }

SeparableSpec random_separable(int dim_a, int dim_b, int n_terms, Rng& rng) {
    if (n_terms < 1) throw DimensionError("random_separable: need at least one term");
    SeparableSpec spec;
    spec.probs = random_simplex(n_terms, rng);
    spec.a_parts.reserve(n_terms);
    spec.b_parts.reserve(n_terms);
    for (int x = 0; x < n_terms; ++x) {
        spec.a_parts.push_back(random_density(dim_a, rng.uniform_int(1, dim_a), rng));
        spec.b_parts.push_back(random_density(dim_b, rng.uniform_int(1, dim_b), rng));
    }
    return spec;
}

BipartiteState compile_separable(const SeparableSpec& spec) {
    require_valid(spec);
    const int da = spec.dim_a();
    const int db = spec.dim_b();
    Mat acc = Mat::Zero(static_cast<Eigen::Index>(da) * db, static_cast<Eigen::Index>(da) * db);
    for (int x = 0; x < spec.size(); ++x)
        acc += spec.probs[x] * tensor(spec.a_parts[x].mat, spec.b_parts[x].mat);
    return {da, db, {acc}};
}

Ensemble b_side_ensemble(const SeparableSpec& spec) {
    Ensemble e;
    e.probs = spec.probs;
    e.members = spec.b_parts;
    return e;
}

} // namespace qcoh
