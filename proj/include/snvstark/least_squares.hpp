#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace snvstark {

struct FitOptions {
    int max_iterations = 200;
    double chi2_rel_tol = 1e-10;
    double step_tol = 1e-12;
    double lambda_init = 1e-3;
    double fd_rel_step = 1e-7;  // forward-difference Jacobian step
};

struct FitResult {
    Eigen::VectorXd params;
    Eigen::MatrixXd covariance;  // (J^T W J)^-1 scaled by residual variance
    double chi2 = 0.0;
    double residual_norm = 0.0;  // sqrt(chi2)
    int n_iterations = 0;
    bool converged = false;

    Eigen::VectorXd uncertainties() const;  // sqrt of covariance diagonal
};

// y = model(x, params)
using ModelFunction = std::function<double(double, const Eigen::VectorXd&)>;

// Levenberg-Marquardt with numeric forward-difference Jacobian and
// multiplicative (x10 / /10) damping adaptation. Requires sigma > 0 and at
// least as many points as parameters. Throws std::invalid_argument on bad
// input and std::runtime_error (with a condition estimate) when the damped
// normal equations are singular.
FitResult least_squares_fit(const ModelFunction& model,
                            const std::vector<double>& x,
                            const std::vector<double>& y,
                            const std::vector<double>& sigma,
                            const Eigen::VectorXd& init,
                            const FitOptions& options = {});

// Forward-difference Jacobian of the weighted residual vector, exposed for
// verification against an independent differentiation route.
Eigen::MatrixXd numeric_jacobian(const ModelFunction& model,
                                 const std::vector<double>& x,
                                 const std::vector<double>& sigma,
                                 const Eigen::VectorXd& params,
                                 double fd_rel_step = 1e-7);

}  // namespace snvstark
