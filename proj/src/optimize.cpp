#include "qcoh/optimize.hpp"

#include <algorithm>
#include <cmath>

#include "qcoh/errors.hpp"

namespace qcoh {

int givens_param_count(int dim) {
    if (dim < 1) throw DimensionError("givens_param_count: dim must be >= 1");
    return dim * (dim - 1);
}

Mat unitary_from_givens(int dim, const std::vector<double>& params) {
    if (static_cast<int>(params.size()) != givens_param_count(dim))
        throw DimensionError("unitary_from_givens: expected " +
                             std::to_string(givens_param_count(dim)) + " parameters, got " +
                             std::to_string(params.size()));
    Mat u = Mat::Identity(dim, dim);
    std::size_t k = 0;
    for (int j = 0; j < dim - 1; ++j) {
        for (int i = j + 1; i < dim; ++i) {
            const double theta = params[k++];
            const double phi = params[k++];
            const double c = std::cos(theta);
            const double s = std::sin(theta);
            const Cplx e_plus(std::cos(phi), std::sin(phi));
            // Right-multiplication by the rotation on the (j, i) plane:
            // col_j' = c*col_j + s*conj(e)*col_i, col_i' = -s*e*col_j + c*col_i.
            Vec col_j = u.col(j);
            Vec col_i = u.col(i);
            u.col(j) = c * col_j + s * std::conj(e_plus) * col_i;
            u.col(i) = -s * e_plus * col_j + c * col_i;
        }
    }
    return u;
}

std::vector<double> givens_params_from_unitary(const Mat& u) {
    require_unitary(u);
    const int dim = static_cast<int>(u.rows());
    Mat v = u;
    std::vector<double> params;
    params.reserve(givens_param_count(dim));
    for (int j = 0; j < dim - 1; ++j) {
        for (int i = j + 1; i < dim; ++i) {
            const Cplx a = v(j, j);
            const Cplx b = v(i, j);
            double theta = 0.0;
            double phi = 0.0;
            if (std::abs(b) > 1e-14) {
                theta = std::atan2(std::abs(b), std::abs(a));
                phi = std::arg(a) - std::arg(b);
            }
            params.push_back(theta);
            params.push_back(phi);
            const double c = std::cos(theta);
            const double s = std::sin(theta);
            const Cplx e_plus(std::cos(phi), std::sin(phi));
            // Row operation zeroing v(i, j); on exit v is diagonal phases.
            Eigen::RowVectorXcd row_j = v.row(j);
            Eigen::RowVectorXcd row_i = v.row(i);
            v.row(j) = c * row_j + s * e_plus * row_i;
            v.row(i) = -s * std::conj(e_plus) * row_j + c * row_i;
        }
    }
    return params;
}

namespace {

struct LocalSearch {
    double value = 0.0;
    bool converged = false;
};

// Coordinate descent with a quadratic fit per coordinate. Smooth
// periodic objective, so a parabola through x-h, x, x+h locates the
// nearby extremum well once h is small.
LocalSearch refine(std::vector<double>& params,
                   const std::function<double(const std::vector<double>&)>& f,
                   double tol, int max_iters) {
    LocalSearch out;
    out.value = f(params);
    double h = 0.4;
    for (int iter = 0; iter < max_iters; ++iter) {
        double sweep_gain = 0.0;
        for (std::size_t k = 0; k < params.size(); ++k) {
            const double x0 = params[k];
            const double f0 = out.value;
            params[k] = x0 + h;
            const double f_plus = f(params);
            params[k] = x0 - h;
            const double f_minus = f(params);

            double best_x = x0;
            double best_f = f0;
            if (f_plus > best_f) { best_f = f_plus; best_x = x0 + h; }
            if (f_minus > best_f) { best_f = f_minus; best_x = x0 - h; }

            const double curvature = f_plus - 2.0 * f0 + f_minus;
            if (curvature < -1e-15) {
                double step = 0.5 * h * (f_minus - f_plus) / curvature;
                step = std::clamp(step, -h, h);
                params[k] = x0 + step;
                const double f_fit = f(params);
                if (f_fit > best_f) { best_f = f_fit; best_x = x0 + step; }
            }
            params[k] = best_x;
            out.value = best_f;
            sweep_gain += best_f - f0;
        }
        if (sweep_gain < tol) {
            if (h < 1e-4) { out.converged = true; break; }
            h *= 0.25;
        }
    }
    return out;
}

} // namespace

BasisSearchResult maximize_over_bases(int dim,
                                      const std::function<double(const Mat&)>& objective,
                                      const OptimizerOptions& opts,
                                      const std::vector<Mat>& warm_starts) {
    if (dim < 1) throw DimensionError("maximize_over_bases: dim must be >= 1");
    if (opts.restarts < 1) throw ValidationError("optimizer needs at least one restart");

    const auto eval = [&](const std::vector<double>& params) {
        return objective(unitary_from_givens(dim, params));
    };

    const int deterministic = 1 + static_cast<int>(warm_starts.size());
    const int total = std::max(opts.restarts, deterministic);
    Rng rng(opts.seed);

    BasisSearchResult result;
    result.n_restarts = total;
    std::vector<double> best_params;

    for (int r = 0; r < total; ++r) {
        std::vector<double> params;
        if (r == 0) {
            params.assign(givens_param_count(dim), 0.0);
        } else if (r < deterministic) {
            params = givens_params_from_unitary(warm_starts[r - 1]);
        } else {
            params = givens_params_from_unitary(random_unitary(dim, rng));
        }
        LocalSearch local = refine(params, eval, opts.tol, opts.max_iters);
        // Strict improvement beyond the tie window keeps the earliest
        // restart, making the winner deterministic per seed.
        if (result.best_restart < 0 || local.value > result.value + 1e-9) {
            result.value = local.value;
            result.best_restart = r;
            result.converged = local.converged;
            best_params = params;
        }
    }
    result.basis_unitary = unitary_from_givens(dim, best_params);
    return result;
}

} // namespace qcoh
