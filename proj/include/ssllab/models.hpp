#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include <Eigen/Core>

#include "ssllab/activations.hpp"
#include "ssllab/synth_data.hpp"

namespace ssllab {

// Monte Carlo estimation of the augmentation expectation: S independent
// augmentation pairs per datapoint. Draws are keyed per (seed, point,
// sample), so a loss and its gradient evaluated with the same spec see
// identical noise (common random numbers).
struct McSpec {
    int samples = 16;
    std::uint64_t seed = 0;
};

// One-layer encoder with two neurons, inner-product similarity and
// Frobenius regularizer alpha * ||W||_F^2.
struct SslModel {
    Eigen::MatrixXd W;  // 2 x d, rows w1 and w2
    double alpha = 1.0 / 800.0;
    Activation activation = Activation::Sigmoid;

    int dim() const { return static_cast<int>(W.cols()); }
};

// Two-layer classifier f(x) = F * act(W x) with separate regularizer
// coefficients for the extractor and the projection row.
struct SlModel {
    Eigen::MatrixXd W;   // 2 x d
    Eigen::Vector2d F = Eigen::Vector2d::Zero();
    double beta = 1.0 / 800.0;
    double gamma = 1.0 / 800.0;

    int dim() const { return static_cast<int>(W.cols()); }
};

// Population objective on the four noise-free templates, each weighted 1/4.
double loss_tilde(const SslModel& model, double tau);

// Finite-sample analogue weighted by realized counts; evaluated on the
// noise-free templates reconstructed from each point's kind.
double loss_hat(const SslModel& model, const Dataset& data);

// Count-weighted template objective. All-zero counts yield the bare
// regularizer (empty data sum).
double loss_hat_from_counts(const SslModel& model, double tau,
                            const std::array<std::int64_t, 4>& counts);

// Monte Carlo estimate of the full augmented objective. rho = 0 collapses
// to loss_hat exactly for any sample count.
double loss_ssl(const SslModel& model, const Dataset& data, double rho, const McSpec& mc);

// Mean binary cross-entropy of sigmoid(F act(W x)) against the labels,
// plus beta*||W||_F^2 + gamma*||F||_2^2. Predictions are clamped to
// [1e-12, 1 - 1e-12] before the logs.
double loss_sl_bce(const SlModel& model, const Dataset& data);

// Margin feasibility: act((w_{y+1})^T x) - act((w_{y'+1})^T x) >=
// act(2) - act(-2) - 5 rho d^{1/10} for every labeled point. Returns
// (all satisfied, worst slack). Neuron 1 pairs with label 0.
std::pair<bool, double> margin_constraint_check(const SlModel& model, const Dataset& data,
                                                double rho, int d);

}  // namespace ssllab
