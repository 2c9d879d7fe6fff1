#pragma once

#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "ssllab/calculus.hpp"
#include "ssllab/regions.hpp"

namespace ssllab {

enum class InitMode { Region, SignOnly, Explicit };

struct TrainConfig {
    double eta = 1e-3;
    long iters = 4000;
    InitMode init_mode = InitMode::Region;
    McSpec mc{};
    long record_every = 40;

    void validate() const;
};

struct TrajectoryPoint {
    long iteration = 0;
    Eigen::MatrixXd W;
    Eigen::Vector2d F = Eigen::Vector2d::Zero();  // two-layer runs only
    double loss = 0.0;
    double grad_norm = 0.0;
};

struct TrainTrajectory {
    std::vector<TrajectoryPoint> snapshots;  // first is the initialization
    Eigen::MatrixXd final_W;
    Eigen::Vector2d final_F = Eigen::Vector2d::Zero();
    bool has_F = false;
};

// Rows drawn uniformly from the activation's initialization box; row 2 is
// the mirror of row 1 (first coordinate negated), which is itself a
// uniform draw from the mirrored box. k_scale rescales the k >= 3
// coordinate range (1 = the full box; experiments use 0 to start on the
// slice containing the stationary point).
Eigen::MatrixXd init_in_region(double tau, RandomStream& rng, Activation activation, int d,
                               double k_scale = 1.0);

// Zero-mean Gaussian entries of the given scale, then signs forced by
// reflection: w1^(1) > 0 > w2^(1), w1^(2) > 0, w2^(2) > 0.
Eigen::MatrixXd init_sign_only(double tau, RandomStream& rng, double scale, int d);

using SslGradFn = std::function<Gradient(const SslModel&, long iter)>;
using SslLossFn = std::function<double(const SslModel&, long iter)>;

// Plain full-batch gradient descent: W <- W - eta * grad. Snapshots are
// recorded every record_every iterations plus the final iterate.
// Non-finite loss or gradient raises DivergenceError with the iteration.
TrainTrajectory gd_train(SslModel model, const SslGradFn& grad_fn, const SslLossFn& loss_fn,
                         const TrainConfig& cfg);

// Checks ||w_j(t) - w_j*|| <= ((kappa-1)/(kappa+1))^t ||w_j(0) - w_j*||
// for both rows at every snapshot. Returns (all hold, worst ratio of
// actual distance to bound); the hold test allows 1e-9 relative slack.
std::pair<bool, double> verify_linear_convergence(const TrainTrajectory& traj,
                                                  const Eigen::MatrixXd& w_star, double kappa);

// Gradient descent on loss_sl_bce, updating both the extractor and the
// projection row.
TrainTrajectory train_sl_bce(SlModel model, const Dataset& data, const TrainConfig& cfg);

// Training-set accuracy of the classifier at threshold 1/2.
double sl_accuracy(const SlModel& model, const Dataset& data);

}  // namespace ssllab
