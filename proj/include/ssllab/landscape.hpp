#pragma once

#include <functional>
#include <tuple>
#include <utility>

#include <Eigen/Core>
#include <json.hpp>

#include "ssllab/calculus.hpp"
#include "ssllab/regions.hpp"

namespace ssllab {

// Measured landscape constants and the inverse-function-theorem
// certificate built from them.
struct LandscapeReport {
    double mu_hat = 0.0;          // min Hessian eigenvalue over the scan
    double lm_hat = 0.0;          // max Hessian eigenvalue over the scan
    double lh_hat = 0.0;          // sampled Lipschitz-Hessian lower bound
    double grad_residual = 0.0;   // ||grad|| at the candidate point
    double radius_r = 0.0;        // one-to-one ball radius 1/(2 ||A^-1|| L_H)
    double radius_r0 = 0.0;       // image ball radius 1/(4 L_H ||A^-1||^2)
    bool certified = false;       // grad_residual <= radius_r0 (safety-factored)
    double displacement_bound = 0.0;  // 2 ||A^-1|| * grad_residual
    double lh_safety_factor = 2.0;    // factor applied to lh_hat in the radii
    double radius_r_raw = 0.0;        // radii with the raw (unfactored) lh_hat
    double radius_r0_raw = 0.0;
    double inv_hessian_norm = 0.0;    // ||A^-1||_2 at the candidate

    nlohmann::json to_json() const;
    static LandscapeReport from_json(const nlohmann::json& j);
};

// Stationary point of the noise-free objective via the two-level
// intermediate-value construction: for each first coordinate, an inner
// bisection solves the tau*x^(2) equation on [x_lo, X_max] (X_max doubled
// from 30 until the bracket closes); an outer bisection then zeroes the
// first-coordinate gradient along that curve. Returns (w1*, w2*) with the
// mirror row, gradient residual at most tol. Bracket sign failures raise
// HypothesisViolation with the endpoint values.
std::pair<Eigen::VectorXd, Eigen::VectorXd> solve_tilde_minimum(double tau, double alpha,
                                                                Activation activation, double tol,
                                                                int d = 10);

// (min, max) eigenvalue of the one-row Hessian over a grid on the active
// 2-D slice of the region pair; coordinates k >= 3 contribute exactly
// 2*alpha. An unbounded tau*x^(2) interval is scanned up to lo + span_cap.
std::pair<double, double> scan_convexity(const Region& r1, const Region& r2, double tau,
                                         double alpha, Activation activation,
                                         int grid_points_per_dim, double span_cap = 25.0);

// Sampled lower bound on the Lipschitz-Hessian constant:
// max ||H(x)-H(y)||_2 / ||x-y||_2 over n_pairs in-region pairs, Hessians
// by central differences of lossfn. Pairs are keyed by index, so a larger
// n_pairs samples a superset.
double estimate_lipschitz_hessian(const std::function<double(const Eigen::VectorXd&)>& lossfn,
                                  const Region& region, int n_pairs, RandomStream& rng);

// Same estimator with an exact Hessian callback.
double estimate_lipschitz_hessian_exact(
    const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& hessfn, const Region& region,
    int n_pairs, RandomStream& rng);

// Sorted-eigenvalue perturbation check: returns (sum of squared sorted
// eigenvalue gaps, sqrt(2) * ||A - B||_F^2, lhs <= rhs).
std::tuple<double, double, bool> hoffman_wielandt_check(const Eigen::MatrixXd& A,
                                                        const Eigen::MatrixXd& B);

// Certificate radii from the Hessian at the candidate, a Lipschitz-Hessian
// estimate and the measured gradient residual. A gradient residual below
// radius_r0 guarantees a true stationary point within displacement_bound
// of the candidate. mu_hat/lm_hat are left for the caller to fill.
LandscapeReport ift_certificate(const Eigen::MatrixXd& hessian_at_candidate, double lh,
                                double grad_residual, double lh_safety_factor = 2.0);

// ||grad_hat - grad_tilde||_2 for the first row at the model's weights;
// reference scale tau * n^(-9/20).
double measure_expectation_noise(const SslModel& model, const Dataset& data, double tau);
double measure_expectation_noise_counts(const SslModel& model, double tau,
                                        const std::array<std::int64_t, 4>& counts);

// ||grad_ssl - grad_hat||_2 for the first row; mc.samples should be large
// (>= 1e4) so Monte Carlo error is subdominant. Reference scale
// rho^(13/15) * d^(6/10).
double measure_sampling_noise(const SslModel& model, const Dataset& data, double rho,
                              const McSpec& mc);

}  // namespace ssllab
