#include "ssllab/training.hpp"

#include <cmath>
#include <limits>

#include "detail_eval.hpp"

namespace ssllab {

void TrainConfig::validate() const {
    if (!(eta > 0.0)) throw ConfigError("TrainConfig: eta must be positive");
    if (iters < 1) throw ConfigError("TrainConfig: iters must be >= 1");
    if (record_every < 1) throw ConfigError("TrainConfig: record_every must be >= 1");
}

Eigen::MatrixXd init_in_region(double tau, RandomStream& rng, Activation activation, int d,
                               double k_scale) {
    const Region box = Region::init_box(activation, tau, d);
    Eigen::MatrixXd W(2, d);
    W(0, 0) = rng.uniform(box.c1.lo, box.c1.hi);
    W(0, 1) = rng.uniform(box.tau_c2.lo, box.tau_c2.hi) / tau;
    for (int k = 2; k < d; ++k) W(0, k) = k_scale * rng.uniform(box.ck.lo, box.ck.hi);
    W.row(1) = W.row(0);
    W(1, 0) = -W(0, 0);
    return W;
}

Eigen::MatrixXd init_sign_only(double /*tau*/, RandomStream& rng, double scale, int d) {
    if (!(scale > 0.0)) throw ConfigError("init_sign_only: scale must be positive");
    Eigen::MatrixXd W(2, d);
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < d; ++k) W(j, k) = scale * rng.next_normal();
    W(0, 0) = std::abs(W(0, 0));
    W(1, 0) = -std::abs(W(1, 0));
    W(0, 1) = std::abs(W(0, 1));
    W(1, 1) = std::abs(W(1, 1));
    return W;
}

TrainTrajectory gd_train(SslModel model, const SslGradFn& grad_fn, const SslLossFn& loss_fn,
                         const TrainConfig& cfg) {
    cfg.validate();
    TrainTrajectory traj;
    for (long t = 0; t < cfg.iters; ++t) {
        const Gradient g = grad_fn(model, t);
        if (!g.w1.allFinite() || !g.w2.allFinite())
            throw DivergenceError("gd_train: non-finite gradient", t);
        if (t % cfg.record_every == 0) {
            const double loss = loss_fn(model, t);
            if (!std::isfinite(loss)) throw DivergenceError("gd_train: non-finite loss", t);
            traj.snapshots.push_back({t, model.W, Eigen::Vector2d::Zero(), loss, g.norm()});
        }
        model.W.row(0) -= cfg.eta * g.w1.transpose();
        model.W.row(1) -= cfg.eta * g.w2.transpose();
    }
    const Gradient g_final = grad_fn(model, cfg.iters);
    traj.snapshots.push_back(
        {cfg.iters, model.W, Eigen::Vector2d::Zero(), loss_fn(model, cfg.iters), g_final.norm()});
    traj.final_W = model.W;
    return traj;
}

std::pair<bool, double> verify_linear_convergence(const TrainTrajectory& traj,
                                                  const Eigen::MatrixXd& w_star, double kappa) {
    if (!(kappa >= 1.0)) throw InputError("verify_linear_convergence: kappa must be >= 1");
    if (traj.snapshots.empty()) throw InputError("verify_linear_convergence: empty trajectory");
    const double rate = (kappa - 1.0) / (kappa + 1.0);
    const double dist0[2] = {(traj.snapshots[0].W.row(0) - w_star.row(0)).norm(),
                             (traj.snapshots[0].W.row(1) - w_star.row(1)).norm()};
    bool all_hold = true;
    double worst = 0.0;
    for (const TrajectoryPoint& s : traj.snapshots) {
        for (int j = 0; j < 2; ++j) {
            const double dist = (s.W.row(j) - w_star.row(j)).norm();
            const double bound = std::pow(rate, static_cast<double>(s.iteration)) * dist0[j];
            double ratio;
            if (bound > 0.0) {
                ratio = dist / bound;
            } else {
                ratio = (dist <= 1e-12 * std::max(1.0, dist0[j]))
                            ? 1.0
                            : std::numeric_limits<double>::infinity();
            }
            worst = std::max(worst, ratio);
            if (ratio > 1.0 + 1e-9) all_hold = false;
        }
    }
    return {all_hold, worst};
}

TrainTrajectory train_sl_bce(SlModel model, const Dataset& data, const TrainConfig& cfg) {
    cfg.validate();
    TrainTrajectory traj;
    traj.has_F = true;
    for (long t = 0; t < cfg.iters; ++t) {
        const Gradient g = grad_sl_bce(model, data);
        if (!g.w1.allFinite() || !g.w2.allFinite() || !g.F->allFinite())
            throw DivergenceError("train_sl_bce: non-finite gradient", t);
        if (t % cfg.record_every == 0) {
            const double loss = loss_sl_bce(model, data);
            if (!std::isfinite(loss)) throw DivergenceError("train_sl_bce: non-finite loss", t);
            traj.snapshots.push_back({t, model.W, model.F, loss, g.norm()});
        }
        model.W.row(0) -= cfg.eta * g.w1.transpose();
        model.W.row(1) -= cfg.eta * g.w2.transpose();
        model.F -= cfg.eta * *g.F;
    }
    const Gradient g_final = grad_sl_bce(model, data);
    traj.snapshots.push_back(
        {cfg.iters, model.W, model.F, loss_sl_bce(model, data), g_final.norm()});
    traj.final_W = model.W;
    traj.final_F = model.F;
    return traj;
}

double sl_accuracy(const SlModel& model, const Dataset& data) {
    if (data.points.empty()) throw InputError("sl_accuracy: dataset is empty");
    const Eigen::VectorXd w1 = model.W.row(0);
    const Eigen::VectorXd w2 = model.W.row(1);
    long correct = 0;
    for (const Datapoint& p : data.points) {
        const double z1 = sigmoid(detail::sdot(w1, p.x));
        const double z2 = sigmoid(detail::sdot(w2, p.x));
        const double yhat = sigmoid(model.F[0] * z1 + model.F[1] * z2);
        if ((yhat > 0.5) == (p.label == 1)) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(data.points.size());
}

}  // namespace ssllab
