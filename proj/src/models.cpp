#include "ssllab/models.hpp"

#include <cmath>
#include <limits>

#include "detail_eval.hpp"

namespace ssllab {

using detail::frob2;
using detail::pair_eval;
using detail::sdot;

double loss_hat_from_counts(const SslModel& model, double tau,
                            const std::array<std::int64_t, 4>& counts) {
    const int d = model.dim();
    const std::int64_t n = counts[0] + counts[1] + counts[2] + counts[3];
    const Eigen::VectorXd w1 = model.W.row(0);
    const Eigen::VectorXd w2 = model.W.row(1);
    double data_term = 0.0;
    if (n > 0) {
        for (int kind = 1; kind <= 4; ++kind) {
            if (counts[kind - 1] == 0) continue;
            const double weight = static_cast<double>(counts[kind - 1]) / static_cast<double>(n);
            const Eigen::VectorXd t = kind_template(kind, d, tau);
            const double a1 = sdot(w1, t);
            const double a2 = sdot(w2, t);
            const double ip = pair_eval(model.activation, a1, a1).ip +
                              pair_eval(model.activation, a2, a2).ip;
            data_term -= weight * ip;
        }
    }
    return data_term + model.alpha * frob2(model.W);
}

double loss_tilde(const SslModel& model, double tau) {
    return loss_hat_from_counts(model, tau, {1, 1, 1, 1});
}

double loss_hat(const SslModel& model, const Dataset& data) {
    const int n = static_cast<int>(data.points.size());
    if (n == 0) throw InputError("loss_hat: dataset is empty");
    // Per-point accumulation over the kind templates; mirrors the
    // augmentation-free path of loss_ssl term for term.
    const int d = model.dim();
    const double tau = data.config.tau;
    const Eigen::VectorXd w1 = model.W.row(0);
    const Eigen::VectorXd w2 = model.W.row(1);
    double targ1[4], targ2[4];
    for (int kind = 1; kind <= 4; ++kind) {
        const Eigen::VectorXd t = kind_template(kind, d, tau);
        targ1[kind - 1] = sdot(w1, t);
        targ2[kind - 1] = sdot(w2, t);
    }
    double total = 0.0;
    for (const Datapoint& p : data.points) {
        const double a1 = targ1[p.kind - 1];
        const double a2 = targ2[p.kind - 1];
        total += pair_eval(model.activation, a1, a1).ip + pair_eval(model.activation, a2, a2).ip;
    }
    return -total / static_cast<double>(n) + model.alpha * frob2(model.W);
}

double loss_ssl(const SslModel& model, const Dataset& data, double rho, const McSpec& mc) {
    if (mc.samples < 1) throw ConfigError("loss_ssl: mc.samples must be >= 1");
    const int n = static_cast<int>(data.points.size());
    if (n == 0) throw InputError("loss_ssl: dataset is empty");
    const int d = model.dim();
    const Eigen::VectorXd w1 = model.W.row(0);
    const Eigen::VectorXd w2 = model.W.row(1);
    const Activation act = model.activation;

    // With rho = 0 every augmentation pair equals (x, x); one sample is exact.
    const int S = (rho == 0.0) ? 1 : mc.samples;
    const std::uint64_t base = tagged_key(mc.seed, StreamTag::AugPair);

    Eigen::VectorXd u(d), v(d);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd& x = data.points[i].x;
        const std::uint64_t point_key = derive_key(base, static_cast<std::uint64_t>(i));
        double point_acc = 0.0;
        for (int s = 0; s < S; ++s) {
            double a1, b1, a2, b2;
            if (rho == 0.0) {
                a1 = sdot(w1, x);
                b1 = a1;
                a2 = sdot(w2, x);
                b2 = a2;
            } else {
                RandomStream st(derive_key(point_key, static_cast<std::uint64_t>(s)));
                for (int k = 0; k < d; ++k) u[k] = x[k] + rho * st.next_normal();
                for (int k = 0; k < d; ++k) v[k] = x[k] + rho * st.next_normal();
                a1 = sdot(w1, u);
                b1 = sdot(w1, v);
                a2 = sdot(w2, u);
                b2 = sdot(w2, v);
            }
            point_acc += pair_eval(act, a1, b1).ip + pair_eval(act, a2, b2).ip;
        }
        total += point_acc / static_cast<double>(S);
    }
    return -total / static_cast<double>(n) + model.alpha * frob2(model.W);
}

double loss_sl_bce(const SlModel& model, const Dataset& data) {
    const int n = static_cast<int>(data.points.size());
    if (n == 0) throw InputError("loss_sl_bce: dataset is empty");
    constexpr double kEps = 1e-12;
    const Eigen::VectorXd w1 = model.W.row(0);
    const Eigen::VectorXd w2 = model.W.row(1);
    double bce = 0.0;
    for (const Datapoint& p : data.points) {
        const double z1 = sigmoid(sdot(w1, p.x));
        const double z2 = sigmoid(sdot(w2, p.x));
        double yhat = sigmoid(model.F[0] * z1 + model.F[1] * z2);
        if (yhat < kEps) yhat = kEps;
        if (yhat > 1.0 - kEps) yhat = 1.0 - kEps;
        bce -= (p.label == 1) ? std::log(yhat) : std::log(1.0 - yhat);
    }
    return bce / static_cast<double>(n) + model.beta * frob2(model.W) +
           model.gamma * model.F.squaredNorm();
}

std::pair<bool, double> margin_constraint_check(const SlModel& model, const Dataset& data,
                                                double rho, int d) {
    const double threshold = sigmoid(2.0) - sigmoid(-2.0) - 5.0 * rho * std::pow(d, 0.1);
    const Eigen::VectorXd rows[2] = {model.W.row(0), model.W.row(1)};
    double worst = std::numeric_limits<double>::infinity();
    for (const Datapoint& p : data.points) {
        const double own = sigmoid(sdot(rows[p.label], p.x));
        const double other = sigmoid(sdot(rows[1 - p.label], p.x));
        const double slack = (own - other) - threshold;
        if (slack < worst) worst = slack;
    }
    return {worst >= 0.0, worst};
}

}  // namespace ssllab
