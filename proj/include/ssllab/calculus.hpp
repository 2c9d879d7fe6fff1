#pragma once

#include <array>
#include <functional>
#include <optional>

#include <Eigen/Core>

#include "ssllab/models.hpp"

namespace ssllab {

// Per-row gradient; F slot is filled for the two-layer classifier only.
struct Gradient {
    Eigen::VectorXd w1;
    Eigen::VectorXd w2;
    std::optional<Eigen::Vector2d> F;

    // Euclidean norm over all stored components.
    double norm() const;
    Eigen::MatrixXd rows_as_matrix() const;  // 2 x d
};

using HessianBlock = Eigen::MatrixXd;  // d x d, symmetric

// Exact gradient of loss_tilde.
Gradient grad_tilde(const SslModel& model, double tau);

// Count-weighted analogue on the kind templates.
Gradient grad_hat(const SslModel& model, const Dataset& data);
Gradient grad_hat_from_counts(const SslModel& model, double tau,
                              const std::array<std::int64_t, 4>& counts);

// Monte Carlo gradient of the augmented objective under common random
// numbers with loss_ssl: the same (seed, point, sample) key yields the
// same draws, so central differences of loss_ssl reproduce this gradient.
Gradient grad_ssl(const SslModel& model, const Dataset& data, double rho, const McSpec& mc);

// Exact gradient of loss_sl_bce, including the projection-row gradient.
// The probability clamp of the loss is ignored; it only binds for
// |pre-activation| > ~27.6.
Gradient grad_sl_bce(const SlModel& model, const Dataset& data);

// Hessian of loss_tilde with respect to one neuron row: a nontrivial 2x2
// corner, 2*alpha on the remaining diagonal, zeros elsewhere.
HessianBlock hessian_tilde_block(const Eigen::VectorXd& w_row, double tau, double alpha,
                                 Activation activation = Activation::Sigmoid);

// The three distinct entries of the active 2x2 corner.
void hessian_tilde_corner(double w1c, double tau_w2, double tau, double alpha,
                          Activation activation, double* h11, double* h12, double* h22);

struct HessianEstimate {
    HessianBlock H;               // symmetrized
    double symmetry_residual;     // ||H - H^T||_F / ||H||_F before symmetrizing
    bool cancellation_warning;    // residual > 1e-4: step too small
};

// Central-difference Hessian. Stochastic losses need common random
// numbers (a fixed-seed closure) for this to be meaningful.
HessianEstimate hessian_mc(const std::function<double(const Eigen::VectorXd&)>& lossfn,
                           const Eigen::VectorXd& point, double step);

// Default central-difference step: cbrt(machine epsilon) * (1 + ||w||).
double fd_step(const Eigen::VectorXd& w);

// Central-difference gradient oracle.
Eigen::VectorXd central_diff_gradient(const std::function<double(const Eigen::VectorXd&)>& lossfn,
                                      const Eigen::VectorXd& point, double step);

}  // namespace ssllab
