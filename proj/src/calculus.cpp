#include "ssllab/calculus.hpp"

#include <cmath>
#include <limits>

#include "detail_eval.hpp"

namespace ssllab {

using detail::pair_eval;
using detail::sdot;

double Gradient::norm() const {
    double acc = w1.squaredNorm() + w2.squaredNorm();
    if (F) acc += F->squaredNorm();
    return std::sqrt(acc);
}

Eigen::MatrixXd Gradient::rows_as_matrix() const {
    Eigen::MatrixXd g(2, w1.size());
    g.row(0) = w1;
    g.row(1) = w2;
    return g;
}

Gradient grad_hat_from_counts(const SslModel& model, double tau,
                              const std::array<std::int64_t, 4>& counts) {
    const int d = model.dim();
    const std::int64_t n = counts[0] + counts[1] + counts[2] + counts[3];
    Gradient g;
    g.w1 = 2.0 * model.alpha * model.W.row(0).transpose();
    g.w2 = 2.0 * model.alpha * model.W.row(1).transpose();
    if (n == 0) return g;

    const Eigen::VectorXd w1 = model.W.row(0);
    const Eigen::VectorXd w2 = model.W.row(1);
    for (int kind = 1; kind <= 4; ++kind) {
        if (counts[kind - 1] == 0) continue;
        const double weight = static_cast<double>(counts[kind - 1]) / static_cast<double>(n);
        const Eigen::VectorXd t = kind_template(kind, d, tau);
        const auto p1 = pair_eval(model.activation, sdot(w1, t), sdot(w1, t));
        const auto p2 = pair_eval(model.activation, sdot(w2, t), sdot(w2, t));
        // d/dw of -weight * act(a)^2 with a = w.t: -(cu + cv) * weight * t
        for (int k = 0; k < d; ++k) {
            g.w1[k] -= weight * (p1.cu * t[k] + p1.cv * t[k]);
            g.w2[k] -= weight * (p2.cu * t[k] + p2.cv * t[k]);
        }
    }
    return g;
}

Gradient grad_tilde(const SslModel& model, double tau) {
    return grad_hat_from_counts(model, tau, {1, 1, 1, 1});
}

Gradient grad_hat(const SslModel& model, const Dataset& data) {
    const int n = static_cast<int>(data.points.size());
    if (n == 0) throw InputError("grad_hat: dataset is empty");
    const int d = model.dim();
    const double tau = data.config.tau;
    const Eigen::VectorXd w1 = model.W.row(0);
    const Eigen::VectorXd w2 = model.W.row(1);

    // Per-point accumulation on the kind templates; mirrors the rho = 0
    // path of grad_ssl term for term.
    detail::PairEval p1s[4], p2s[4];
    Eigen::MatrixXd templ(4, d);
    for (int kind = 1; kind <= 4; ++kind) {
        const Eigen::VectorXd t = kind_template(kind, d, tau);
        templ.row(kind - 1) = t;
        const double a1 = sdot(w1, t);
        const double a2 = sdot(w2, t);
        p1s[kind - 1] = pair_eval(model.activation, a1, a1);
        p2s[kind - 1] = pair_eval(model.activation, a2, a2);
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    Eigen::VectorXd acc1 = Eigen::VectorXd::Zero(d);
    Eigen::VectorXd acc2 = Eigen::VectorXd::Zero(d);
    for (const Datapoint& p : data.points) {
        const int kk = p.kind - 1;
        for (int k = 0; k < d; ++k) {
            const double tk = templ(kk, k);
            acc1[k] += inv_n * (p1s[kk].cu * tk + p1s[kk].cv * tk);
            acc2[k] += inv_n * (p2s[kk].cu * tk + p2s[kk].cv * tk);
        }
    }
    Gradient g;
    g.w1 = 2.0 * model.alpha * w1 - acc1;
    g.w2 = 2.0 * model.alpha * w2 - acc2;
    return g;
}

Gradient grad_ssl(const SslModel& model, const Dataset& data, double rho, const McSpec& mc) {
    if (mc.samples < 1) throw ConfigError("grad_ssl: mc.samples must be >= 1");
    const int n = static_cast<int>(data.points.size());
    if (n == 0) throw InputError("grad_ssl: dataset is empty");
    const int d = model.dim();
    const Eigen::VectorXd w1 = model.W.row(0);
    const Eigen::VectorXd w2 = model.W.row(1);
    const Activation act = model.activation;

    const int S = (rho == 0.0) ? 1 : mc.samples;
    const std::uint64_t base = tagged_key(mc.seed, StreamTag::AugPair);
    const double scale = 1.0 / (static_cast<double>(n) * static_cast<double>(S));

    Eigen::VectorXd u(d), v(d);
    Eigen::VectorXd acc1 = Eigen::VectorXd::Zero(d);
    Eigen::VectorXd acc2 = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd& x = data.points[i].x;
        const std::uint64_t point_key = derive_key(base, static_cast<std::uint64_t>(i));
        for (int s = 0; s < S; ++s) {
            const double* pu;
            const double* pv;
            double a1, b1, a2, b2;
            if (rho == 0.0) {
                a1 = sdot(w1, x);
                b1 = a1;
                a2 = sdot(w2, x);
                b2 = a2;
                pu = x.data();
                pv = x.data();
            } else {
                RandomStream st(derive_key(point_key, static_cast<std::uint64_t>(s)));
                for (int k = 0; k < d; ++k) u[k] = x[k] + rho * st.next_normal();
                for (int k = 0; k < d; ++k) v[k] = x[k] + rho * st.next_normal();
                a1 = sdot(w1, u);
                b1 = sdot(w1, v);
                a2 = sdot(w2, u);
                b2 = sdot(w2, v);
                pu = u.data();
                pv = v.data();
            }
            const auto e1 = pair_eval(act, a1, b1);
            const auto e2 = pair_eval(act, a2, b2);
            for (int k = 0; k < d; ++k) {
                acc1[k] += scale * (e1.cu * pu[k] + e1.cv * pv[k]);
                acc2[k] += scale * (e2.cu * pu[k] + e2.cv * pv[k]);
            }
        }
    }
    Gradient g;
    g.w1 = 2.0 * model.alpha * w1 - acc1;
    g.w2 = 2.0 * model.alpha * w2 - acc2;
    return g;
}

Gradient grad_sl_bce(const SlModel& model, const Dataset& data) {
    const int n = static_cast<int>(data.points.size());
    if (n == 0) throw InputError("grad_sl_bce: dataset is empty");
    const int d = model.dim();
    const Eigen::VectorXd w1 = model.W.row(0);
    const Eigen::VectorXd w2 = model.W.row(1);
    const double inv_n = 1.0 / static_cast<double>(n);

    Eigen::VectorXd g1 = 2.0 * model.beta * w1;
    Eigen::VectorXd g2 = 2.0 * model.beta * w2;
    Eigen::Vector2d gF = 2.0 * model.gamma * model.F;
    for (const Datapoint& p : data.points) {
        const double z1 = sigmoid(sdot(w1, p.x));
        const double z2 = sigmoid(sdot(w2, p.x));
        const double yhat = sigmoid(model.F[0] * z1 + model.F[1] * z2);
        const double res = inv_n * (yhat - static_cast<double>(p.label));
        gF[0] += res * z1;
        gF[1] += res * z2;
        const double c1 = res * model.F[0] * z1 * (1.0 - z1);
        const double c2 = res * model.F[1] * z2 * (1.0 - z2);
        g1 += c1 * p.x;
        g2 += c2 * p.x;
    }
    Gradient g;
    g.w1 = std::move(g1);
    g.w2 = std::move(g2);
    g.F = gF;
    return g;
}

void hessian_tilde_corner(double w1c, double tau_w2, double tau, double alpha,
                          Activation activation, double* h11, double* h12, double* h22) {
    const double hp_p = h_general(activation, 1, w1c);
    const double hp_m = h_general(activation, 1, -w1c);
    const double hp_a = h_general(activation, 1, w1c + tau_w2);
    const double hp_b = h_general(activation, 1, -w1c + tau_w2);
    *h11 = -0.5 * (hp_p + hp_m + hp_a + hp_b) + 2.0 * alpha;
    *h12 = -(tau / 2.0) * (hp_a - hp_b);
    *h22 = -(tau * tau / 2.0) * (hp_a + hp_b) + 2.0 * alpha;
}

HessianBlock hessian_tilde_block(const Eigen::VectorXd& w_row, double tau, double alpha,
                                 Activation activation) {
    const int d = static_cast<int>(w_row.size());
    HessianBlock H = HessianBlock::Zero(d, d);
    double h11, h12, h22;
    hessian_tilde_corner(w_row[0], tau * w_row[1], tau, alpha, activation, &h11, &h12, &h22);
    H(0, 0) = h11;
    H(0, 1) = H(1, 0) = h12;
    H(1, 1) = h22;
    for (int k = 2; k < d; ++k) H(k, k) = 2.0 * alpha;
    return H;
}

double fd_step(const Eigen::VectorXd& w) {
    return std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + w.norm());
}

Eigen::VectorXd central_diff_gradient(const std::function<double(const Eigen::VectorXd&)>& lossfn,
                                      const Eigen::VectorXd& point, double step) {
    const int d = static_cast<int>(point.size());
    Eigen::VectorXd g(d);
    Eigen::VectorXd p = point;
    for (int k = 0; k < d; ++k) {
        const double saved = p[k];
        p[k] = saved + step;
        const double fp = lossfn(p);
        p[k] = saved - step;
        const double fm = lossfn(p);
        p[k] = saved;
        g[k] = (fp - fm) / (2.0 * step);
    }
    return g;
}

HessianEstimate hessian_mc(const std::function<double(const Eigen::VectorXd&)>& lossfn,
                           const Eigen::VectorXd& point, double step) {
    if (!(step > 0.0)) throw InputError("hessian_mc: step must be positive");
    const int d = static_cast<int>(point.size());

    Eigen::MatrixXd H(d, d);
    Eigen::VectorXd p = point;
    const double f0 = lossfn(p);
    // Off-diagonal entries come out of one 4-point stencil evaluated in two
    // association orders. The orders agree in exact arithmetic, so their
    // spread measures the floating-point cancellation left in the stencil.
    double noise2 = 0.0;
    for (int i = 0; i < d; ++i) {
        const double si = p[i];
        p[i] = si + step;
        const double fp = lossfn(p);
        p[i] = si - step;
        const double fm = lossfn(p);
        p[i] = si;
        H(i, i) = (fp - 2.0 * f0 + fm) / (step * step);
        for (int j = i + 1; j < d; ++j) {
            const double sj = p[j];
            p[i] = si + step;
            p[j] = sj + step;
            const double fpp = lossfn(p);
            p[j] = sj - step;
            const double fpm = lossfn(p);
            p[i] = si - step;
            const double fmm = lossfn(p);
            p[j] = sj + step;
            const double fmp = lossfn(p);
            p[i] = si;
            p[j] = sj;
            const double d1 = (fpp - fpm) - (fmp - fmm);
            const double d2 = (fpp - fmp) - (fpm - fmm);
            const double hij = d1 / (4.0 * step * step);
            H(i, j) = hij;
            H(j, i) = hij;
            const double spread = (d1 - d2) / (4.0 * step * step);
            noise2 += 2.0 * spread * spread;
        }
    }
    const double residual = std::sqrt(noise2) / std::max(1e-300, H.norm());
    return {std::move(H), residual, residual > 1e-4};
}

}  // namespace ssllab
