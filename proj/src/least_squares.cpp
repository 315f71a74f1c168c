#include "snvstark/least_squares.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace snvstark {

Eigen::VectorXd FitResult::uncertainties() const {
    Eigen::VectorXd u = covariance.diagonal();
    for (int i = 0; i < u.size(); ++i) u(i) = std::sqrt(std::max(u(i), 0.0));
    return u;
}

namespace {

Eigen::VectorXd weighted_residuals(const ModelFunction& model,
                                   const std::vector<double>& x,
                                   const std::vector<double>& y,
                                   const std::vector<double>& sigma,
                                   const Eigen::VectorXd& p) {
    Eigen::VectorXd r(x.size());
    for (size_t i = 0; i < x.size(); ++i)
        r(i) = (y[i] - model(x[i], p)) / sigma[i];
    return r;
}

}  // namespace

Eigen::MatrixXd numeric_jacobian(const ModelFunction& model,
                                 const std::vector<double>& x,
                                 const std::vector<double>& sigma,
                                 const Eigen::VectorXd& params,
                                 double fd_rel_step) {
    const int n = static_cast<int>(x.size());
    const int np = static_cast<int>(params.size());
    Eigen::MatrixXd j(n, np);
    Eigen::VectorXd base(n);
    for (int i = 0; i < n; ++i) base(i) = model(x[i], params) / sigma[i];
    for (int k = 0; k < np; ++k) {
        const double h = fd_rel_step * (1.0 + std::abs(params(k)));
        Eigen::VectorXd p = params;
        p(k) += h;
        for (int i = 0; i < n; ++i)
            j(i, k) = (model(x[i], p) / sigma[i] - base(i)) / h;
    }
    return j;
}

FitResult least_squares_fit(const ModelFunction& model,
                            const std::vector<double>& x,
                            const std::vector<double>& y,
                            const std::vector<double>& sigma,
                            const Eigen::VectorXd& init,
                            const FitOptions& options) {
    const int n = static_cast<int>(x.size());
    const int np = static_cast<int>(init.size());
    if (y.size() != x.size() || sigma.size() != x.size())
        throw std::invalid_argument("least_squares_fit: size mismatch");
    if (n < np)
        throw std::invalid_argument(
            "least_squares_fit: fewer data points than parameters");
    for (double s : sigma)
        if (!(s > 0.0))
            throw std::invalid_argument("least_squares_fit: sigma must be > 0");

    Eigen::VectorXd p = init;
    Eigen::VectorXd r = weighted_residuals(model, x, y, sigma, p);
    double chi2 = r.squaredNorm();
    double lambda = options.lambda_init;

    FitResult result;
    result.converged = false;

    int iter = 0;
    Eigen::MatrixXd jt_j;  // unscaled normal matrix at the final point
    for (; iter < options.max_iterations; ++iter) {
        const Eigen::MatrixXd j =
            numeric_jacobian(model, x, sigma, p, options.fd_rel_step);
        jt_j = j.transpose() * j;
        const Eigen::VectorXd g = j.transpose() * r;

        bool accepted = false;
        for (int tries = 0; tries < 40 && !accepted; ++tries) {
            Eigen::MatrixXd a = jt_j;
            a.diagonal() += lambda * jt_j.diagonal().cwiseMax(1e-30);
            const Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
            if (ldlt.info() != Eigen::Success ||
                !(ldlt.vectorD().minCoeff() > 0.0)) {
                const double cond = jt_j.diagonal().maxCoeff() /
                                    std::max(jt_j.diagonal().minCoeff(), 1e-300);
                throw std::runtime_error(
                    "least_squares_fit: singular normal equations, diagonal "
                    "ratio ~ " + std::to_string(cond));
            }
            const Eigen::VectorXd step = ldlt.solve(g);
            const Eigen::VectorXd p_try = p + step;
            const Eigen::VectorXd r_try =
                weighted_residuals(model, x, y, sigma, p_try);
            const double chi2_try = r_try.squaredNorm();
            // the relative slack keeps progress possible once chi2 changes
            // fall below double roundoff near the optimum
            if (std::isfinite(chi2_try) && chi2_try <= chi2 * (1.0 + 1e-14)) {
                const double rel_drop = (chi2 - chi2_try) / std::max(chi2, 1e-300);
                const double step_norm = step.norm();
                p = p_try;
                r = r_try;
                chi2 = chi2_try;
                lambda = std::max(lambda / 10.0, 1e-14);
                accepted = true;
                if ((rel_drop >= 0.0 && rel_drop < options.chi2_rel_tol) ||
                    step_norm < options.step_tol) {
                    result.converged = true;
                }
            } else {
                lambda *= 10.0;
                if (lambda > 1e14) {
                    // cannot improve further; treat as converged to the
                    // current stationary point
                    result.converged = true;
                    accepted = true;
                }
            }
        }
        if (result.converged) {
            ++iter;
            break;
        }
    }

    // covariance from the Gauss-Newton normal matrix, scaled by the residual
    // variance estimate
    const Eigen::MatrixXd j =
        numeric_jacobian(model, x, sigma, p, options.fd_rel_step);
    jt_j = j.transpose() * j;
    Eigen::MatrixXd cov;
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(jt_j);
    if (lu.isInvertible()) {
        cov = lu.inverse();
        const int dof = std::max(n - np, 1);
        cov *= chi2 / dof;
        cov = 0.5 * (cov + cov.transpose().eval());
    } else {
        cov = Eigen::MatrixXd::Constant(np, np,
                                        std::numeric_limits<double>::quiet_NaN());
    }

    result.params = p;
    result.covariance = cov;
    result.chi2 = chi2;
    result.residual_norm = std::sqrt(chi2);
    result.n_iterations = iter;
    return result;
}

}  // namespace snvstark
