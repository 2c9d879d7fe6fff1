#include "ssllab/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace ssllab {

namespace {

double spectral_norm_sym(const Eigen::MatrixXd& M) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

void require_symmetric(const Eigen::MatrixXd& A, const char* who) {
    if (A.rows() != A.cols()) throw InputError(std::string(who) + ": matrix must be square");
    const double resid = (A - A.transpose()).norm();
    if (resid >= 1e-8 * std::max(1.0, A.norm()))
        throw InputError(std::string(who) + ": matrix is not symmetric");
}

}  // namespace

nlohmann::json LandscapeReport::to_json() const {
    return nlohmann::json{{"mu_hat", mu_hat},
                          {"lm_hat", lm_hat},
                          {"lh_hat", lh_hat},
                          {"grad_residual", grad_residual},
                          {"radius_r", radius_r},
                          {"radius_r0", radius_r0},
                          {"certified", certified},
                          {"displacement_bound", displacement_bound},
                          {"lh_safety_factor", lh_safety_factor},
                          {"radius_r_safety", radius_r_safety},
                          {"radius_r0_safety", radius_r0_safety},
                          {"inv_hessian_norm", inv_hessian_norm}};
}

LandscapeReport LandscapeReport::from_json(const nlohmann::json& j) {
    LandscapeReport r;
    r.mu_hat = j.at("mu_hat").get<double>();
    r.lm_hat = j.at("lm_hat").get<double>();
    r.lh_hat = j.at("lh_hat").get<double>();
    r.grad_residual = j.at("grad_residual").get<double>();
    r.radius_r = j.at("radius_r").get<double>();
    r.radius_r0 = j.at("radius_r0").get<double>();
    r.certified = j.at("certified").get<bool>();
    r.displacement_bound = j.value("displacement_bound", 0.0);
    r.lh_safety_factor = j.value("lh_safety_factor", 2.0);
    r.radius_r_safety = j.value("radius_r_safety", 0.0);
    r.radius_r0_safety = j.value("radius_r0_safety", 0.0);
    r.inv_hessian_norm = j.value("inv_hessian_norm", 0.0);
    return r;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> solve_tilde_minimum(double tau, double alpha,
                                                                Activation activation, double tol,
                                                                int d) {
    if (!(alpha > 0.0)) throw ConfigError("solve_tilde_minimum: alpha must be positive");
    if (!(tol > 0.0)) throw ConfigError("solve_tilde_minimum: tol must be positive");
    if (d < 3) throw ConfigError("solve_tilde_minimum: d must be >= 3");

    const Region slice = Region::solver_slice(activation, tau, d);
    const double w1_lo = slice.c1.lo, w1_hi = slice.c1.hi;
    const double x_lo = slice.tau_c2.lo;
    constexpr double kBisectTol = 1e-12;  // abscissa tolerance, both levels

    const auto h0 = [&](double x) { return h_general(activation, 0, x); };
    const auto phi = [&](double x, double w1c) {
        return (4.0 * alpha / (tau * tau)) * x - (h0(x + w1c) + h0(x - w1c));
    };

    // Inner solve: unique root of phi on [x_lo, +inf) for fixed w1c.
    const auto inner = [&](double w1c) {
        const double at_lo = phi(x_lo, w1c);
        if (!(at_lo < 0.0)) {
            std::ostringstream os;
            os << "solve_tilde_minimum: inner bracket failed, phi(" << x_lo << ") = " << at_lo
               << " at w1 = " << w1c << " (expected < 0; requires tau >= 7 for sigmoid)";
            throw HypothesisViolation(os.str());
        }
        double hi = 30.0;
        while (phi(hi, w1c) <= 0.0) {
            hi *= 2.0;
            if (hi > 1e12) throw HypothesisViolation("solve_tilde_minimum: phi has no sign change");
        }
        double lo = x_lo;
        while (hi - lo > kBisectTol) {
            const double mid = 0.5 * (lo + hi);
            (phi(mid, w1c) < 0.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };

    // Outer function: first-coordinate gradient along the inner curve.
    const auto outer = [&](double w1c) {
        const double x = inner(w1c);
        return -0.5 * (h0(w1c) - h0(-w1c) + h0(w1c + x) - h0(-w1c + x)) + 2.0 * alpha * w1c;
    };

    const double g_lo = outer(w1_lo), g_hi = outer(w1_hi);
    if (!(g_lo < 0.0 && g_hi > 0.0)) {
        std::ostringstream os;
        os << "solve_tilde_minimum: outer bracket failed, g(" << w1_lo << ") = " << g_lo << ", g("
           << w1_hi << ") = " << g_hi << " (expected < 0 and > 0)";
        throw HypothesisViolation(os.str());
    }
    double lo = w1_lo, hi = w1_hi;
    while (hi - lo > kBisectTol) {
        const double mid = 0.5 * (lo + hi);
        (outer(mid) < 0.0 ? lo : hi) = mid;
    }
    const double w1c = 0.5 * (lo + hi);
    const double x = inner(w1c);

    Eigen::VectorXd w1 = Eigen::VectorXd::Zero(d);
    w1[0] = w1c;
    w1[1] = x / tau;
    Eigen::VectorXd w2 = w1;
    w2[0] = -w1c;

    SslModel probe;
    probe.W.resize(2, d);
    probe.W.row(0) = w1;
    probe.W.row(1) = w2;
    probe.alpha = alpha;
    probe.activation = activation;
    const double residual = grad_tilde(probe, tau).norm();
    if (!(residual <= tol)) {
        std::ostringstream os;
        os << "solve_tilde_minimum: residual " << residual << " exceeds tol " << tol;
        throw HypothesisViolation(os.str());
    }
    return {std::move(w1), std::move(w2)};
}

std::pair<double, double> scan_convexity(const Region& r1, const Region& r2, double tau,
                                         double alpha, Activation activation,
                                         int grid_points_per_dim, double span_cap) {
    if (grid_points_per_dim < 2) throw InputError("scan_convexity: need >= 2 grid points per dim");
    double mn = std::numeric_limits<double>::infinity();
    double mx = -std::numeric_limits<double>::infinity();
    for (const Region* r : {&r1, &r2}) {
        const double c1_lo = r->c1.lo, c1_hi = r->c1.hi;
        const double t2_lo = r->tau_c2.lo;
        const double t2_hi = r->tau_c2.bounded() ? r->tau_c2.hi : t2_lo + span_cap;
        for (int i = 0; i < grid_points_per_dim; ++i) {
            const double w1c = c1_lo + (c1_hi - c1_lo) * i / (grid_points_per_dim - 1);
            for (int j = 0; j < grid_points_per_dim; ++j) {
                const double t2 = t2_lo + (t2_hi - t2_lo) * j / (grid_points_per_dim - 1);
                double h11, h12, h22;
                hessian_tilde_corner(w1c, t2, tau, alpha, activation, &h11, &h12, &h22);
                const double mean = 0.5 * (h11 + h22);
                const double disc = std::sqrt(0.25 * (h11 - h22) * (h11 - h22) + h12 * h12);
                mn = std::min(mn, mean - disc);
                mx = std::max(mx, mean + disc);
            }
        }
    }
    if (r1.d > 2) {  // the k >= 3 diagonal contributes exactly 2*alpha
        mn = std::min(mn, 2.0 * alpha);
        mx = std::max(mx, 2.0 * alpha);
    }
    return {mn, mx};
}

double estimate_lipschitz_hessian_exact(
    const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& hessfn, const Region& region,
    int n_pairs, RandomStream& rng) {
    if (n_pairs < 1) throw InputError("estimate_lipschitz_hessian: n_pairs must be >= 1");
    const std::uint64_t base = rng.next_u64();
    double best = 0.0;
    for (int i = 0; i < n_pairs; ++i) {
        RandomStream pr(derive_key(base, static_cast<std::uint64_t>(i)));
        const Eigen::VectorXd x = region.sample(pr);
        const Eigen::VectorXd y = region.sample(pr);
        const double dist = (x - y).norm();
        if (dist < 1e-12) continue;
        const double rate = spectral_norm_sym(hessfn(x) - hessfn(y)) / dist;
        best = std::max(best, rate);
    }
    return best;
}

double estimate_lipschitz_hessian(const std::function<double(const Eigen::VectorXd&)>& lossfn,
                                  const Region& region, int n_pairs, RandomStream& rng) {
    const auto hessfn = [&](const Eigen::VectorXd& w) {
        return hessian_mc(lossfn, w, fd_step(w)).H;
    };
    return estimate_lipschitz_hessian_exact(hessfn, region, n_pairs, rng);
}

std::tuple<double, double, bool> hoffman_wielandt_check(const Eigen::MatrixXd& A,
                                                        const Eigen::MatrixXd& B) {
    require_symmetric(A, "hoffman_wielandt_check");
    require_symmetric(B, "hoffman_wielandt_check");
    if (A.rows() != B.rows()) throw InputError("hoffman_wielandt_check: size mismatch");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ea(A, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eb(B, Eigen::EigenvaluesOnly);
    // Eigen returns eigenvalues sorted ascending: the optimal matching for
    // real symmetric pairs.
    double lhs = 0.0;
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        const double gap = ea.eigenvalues()(i) - eb.eigenvalues()(i);
        lhs += gap * gap;
    }
    const double rhs = std::sqrt(2.0) * (A - B).squaredNorm();
    const bool ok = lhs <= rhs + 1e-12 * std::max(1.0, rhs);
    return {lhs, rhs, ok};
}

LandscapeReport ift_certificate(const Eigen::MatrixXd& hessian_at_candidate, double lh,
                                double grad_residual, double lh_safety_factor) {
    require_symmetric(hessian_at_candidate, "ift_certificate");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hessian_at_candidate,
                                                      Eigen::EigenvaluesOnly);
    double min_abs = std::numeric_limits<double>::infinity();
    double max_abs = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double a = std::abs(es.eigenvalues()(i));
        min_abs = std::min(min_abs, a);
        max_abs = std::max(max_abs, a);
    }
    if (!(min_abs > 0.0) || min_abs <= 1e-14 * max_abs)
        throw CertificateUnavailable("ift_certificate: Hessian is numerically singular");

    LandscapeReport rep;
    rep.lh_hat = lh;
    rep.lh_safety_factor = lh_safety_factor;
    rep.grad_residual = grad_residual;
    rep.inv_hessian_norm = 1.0 / min_abs;
    const double inv = rep.inv_hessian_norm;
    rep.radius_r = 1.0 / (2.0 * inv * lh);
    rep.radius_r0 = 1.0 / (4.0 * lh * inv * inv);
    const double lh_safe = lh * lh_safety_factor;
    rep.radius_r_safety = 1.0 / (2.0 * inv * lh_safe);
    rep.radius_r0_safety = 1.0 / (4.0 * lh_safe * inv * inv);
    rep.certified = grad_residual <= rep.radius_r0_safety;
    rep.displacement_bound = 2.0 * inv * grad_residual;
    return rep;
}

double measure_expectation_noise_counts(const SslModel& model, double tau,
                                        const std::array<std::int64_t, 4>& counts) {
    const Gradient gh = grad_hat_from_counts(model, tau, counts);
    const Gradient gt = grad_tilde(model, tau);
    return (gh.w1 - gt.w1).norm();
}

double measure_expectation_noise(const SslModel& model, const Dataset& data, double tau) {
    return measure_expectation_noise_counts(model, tau, data.counts);
}

double measure_sampling_noise(const SslModel& model, const Dataset& data, double rho,
                              const McSpec& mc) {
    const Gradient gs = grad_ssl(model, data, rho, mc);
    const Gradient gh = grad_hat(model, data);
    return (gs.w1 - gh.w1).norm();
}

}  // namespace ssllab
