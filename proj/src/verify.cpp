#include <cmath>
#include <cstring>
#include <functional>
#include <ostream>
#include <sstream>

#include "ssllab/experiments.hpp"
#include "ssllab/io.hpp"

namespace ssllab {

namespace {

struct Check {
    const char* name;
    std::function<void()> fn;  // throws on failure
};

void expect(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

Dataset balanced_dataset(int d, double tau, int per_kind) {
    Dataset data;
    data.config.d = d;
    data.config.tau = tau;
    data.config.rho = 0.0;
    data.config.n = 4 * per_kind;
    data.config.seed = 0;
    for (int kind = 1; kind <= 4; ++kind) {
        for (int i = 0; i < per_kind; ++i) {
            Datapoint p;
            p.kind = kind;
            p.label = label_for_kind(kind);
            p.x = kind_template(kind, d, tau);
            data.counts[kind - 1] += 1;
            data.points.push_back(std::move(p));
        }
    }
    return data;
}

SslModel random_ssl_model(int d, double alpha, RandomStream& rng,
                          Activation act = Activation::Sigmoid) {
    SslModel m;
    m.W.resize(2, d);
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < d; ++k) m.W(j, k) = rng.uniform(-2.0, 2.0);
    m.alpha = alpha;
    m.activation = act;
    return m;
}

void check_activation_symmetry() {
    RandomStream rng(7);
    for (int i = 0; i < 100; ++i) {
        const double x = rng.uniform(-20.0, 20.0);
        expect(std::abs(sigmoid(x) + sigmoid(-x) - 1.0) <= 1e-12, "sigmoid symmetry");
        expect(std::abs(activation_value(Activation::Tanh, 0, x) +
                        activation_value(Activation::Tanh, 0, -x)) <= 1e-12,
               "tanh oddness");
    }
}

void check_derivative_bounds() {
    for (int i = 0; i <= 3000; ++i) {
        const double x = -30.0 + 60.0 * i / 3000.0;
        expect(activation_value(Activation::Sigmoid, 1, x) <= 0.25 + 1e-15, "sigma' <= 1/4");
        expect(std::abs(h_value(1, x)) < 0.25, "|h'| < 1/4");
    }
}

void check_dataset_determinism() {
    DistributionConfig cfg;
    cfg.d = 10;
    cfg.tau = 7.0;
    cfg.rho = std::pow(10.0, -1.5);
    cfg.n = 200;
    cfg.seed = 42;
    const Dataset a = sample_dataset(cfg);
    const Dataset b = sample_dataset(cfg);
    expect(a.counts == b.counts, "counts differ across identical configs");
    std::int64_t total = 0;
    for (int k = 0; k < 4; ++k) total += a.counts[k];
    expect(total == cfg.n, "counts do not sum to n");
    for (int i = 0; i < cfg.n; ++i) {
        expect(a.points[i].kind == b.points[i].kind, "kind differs");
        expect(std::memcmp(a.points[i].x.data(), b.points[i].x.data(),
                           sizeof(double) * cfg.d) == 0,
               "coordinates differ bitwise");
        expect(a.points[i].label == ((a.points[i].kind >= 3) ? 1 : 0), "label mapping");
    }
}

void check_noise_free_templates() {
    DistributionConfig cfg;
    cfg.d = 6;
    cfg.tau = 3.5;
    cfg.rho = 0.0;
    cfg.n = 64;
    cfg.seed = 5;
    const Dataset data = sample_dataset(cfg);
    for (const Datapoint& p : data.points) {
        const Eigen::VectorXd t = kind_template(p.kind, cfg.d, cfg.tau);
        expect((p.x - t).norm() == 0.0, "noise-free point differs from its template");
    }
}

void check_loss_chain() {
    RandomStream rng(11);
    const int d = 8;
    const double tau = 7.0;
    SslModel m = random_ssl_model(d, 1.0 / 800.0, rng);

    const Dataset balanced = balanced_dataset(d, tau, 3);
    expect(std::abs(loss_hat(m, balanced) - loss_tilde(m, tau)) <= 1e-14,
           "equal-count loss_hat != loss_tilde");

    DistributionConfig cfg;
    cfg.d = d;
    cfg.tau = tau;
    cfg.rho = 0.0;
    cfg.n = 40;
    cfg.seed = 3;
    const Dataset nf = sample_dataset(cfg);
    for (int S : {1, 3, 16}) {
        expect(loss_ssl(m, nf, 0.0, McSpec{S, 99}) == loss_hat(m, nf),
               "loss_ssl(rho=0) != loss_hat bitwise");
    }

    SslModel m0 = m;
    m0.alpha = 0.0;
    SslModel m1 = m;
    m1.alpha = 1.0;
    const double frob = m.W.squaredNorm();
    expect(std::abs((loss_tilde(m1, tau) - loss_tilde(m0, tau)) - frob) <= 1e-13 * (1.0 + frob),
           "regularizer delta is not ||W||_F^2");
}

void check_gradient_fd() {
    RandomStream rng(13);
    const int d = 6;
    const double tau = 7.0;
    const Dataset data = [&] {
        DistributionConfig cfg;
        cfg.d = d;
        cfg.tau = tau;
        cfg.rho = std::pow(10.0, -1.5);
        cfg.n = 30;
        cfg.seed = 17;
        return sample_dataset(cfg);
    }();

    for (int rep = 0; rep < 3; ++rep) {
        SslModel m = random_ssl_model(d, 1.0 / 800.0, rng);
        // First-row slice of each analytic gradient vs central differences.
        const auto check_row = [&](const Gradient& g,
                                   const std::function<double(const SslModel&)>& loss,
                                   double tol, const char* what) {
            Eigen::VectorXd w = m.W.row(0);
            const auto f = [&](const Eigen::VectorXd& row) {
                SslModel probe = m;
                probe.W.row(0) = row;
                return loss(probe);
            };
            const Eigen::VectorXd fd = central_diff_gradient(f, w, fd_step(w));
            expect((g.w1 - fd).norm() <= tol * (fd.norm() + 1e-9), what);
        };
        check_row(grad_tilde(m, tau), [&](const SslModel& p) { return loss_tilde(p, tau); },
                  1e-6, "grad_tilde finite-difference mismatch");
        check_row(grad_hat(m, data), [&](const SslModel& p) { return loss_hat(p, data); }, 1e-6,
                  "grad_hat finite-difference mismatch");
        const McSpec mc{64, 555};
        check_row(grad_ssl(m, data, 0.03, mc),
                  [&](const SslModel& p) { return loss_ssl(p, data, 0.03, mc); }, 1e-5,
                  "grad_ssl finite-difference mismatch (common random numbers)");
    }

    RandomStream rng2(14);
    for (int rep = 0; rep < 3; ++rep) {
        SlModel m;
        m.W.resize(2, d);
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < d; ++k) m.W(j, k) = rng2.uniform(-1.0, 1.0);
        m.F = Eigen::Vector2d(rng2.uniform(-1.5, 1.5), rng2.uniform(-1.5, 1.5));
        const Gradient g = grad_sl_bce(m, data);
        Eigen::VectorXd w = m.W.row(0);
        const auto f = [&](const Eigen::VectorXd& row) {
            SlModel probe = m;
            probe.W.row(0) = row;
            return loss_sl_bce(probe, data);
        };
        const Eigen::VectorXd fd = central_diff_gradient(f, w, fd_step(w));
        expect((g.w1 - fd).norm() <= 1e-6 * (fd.norm() + 1e-9),
               "grad_sl_bce finite-difference mismatch");
    }
}

void check_hessian_structure() {
    RandomStream rng(15);
    Eigen::VectorXd w(9);
    for (int k = 0; k < 9; ++k) w[k] = rng.uniform(-2.0, 2.0);
    const double alpha = 1.0 / 800.0;
    const HessianBlock H = hessian_tilde_block(w, 7.0, alpha);
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) {
            if (i >= 2 || j >= 2) {
                const double want = (i == j) ? 2.0 * alpha : 0.0;
                expect(H(i, j) == want, "hessian_tilde_block outside the 2x2 corner");
            }
        }
    expect(H(0, 1) == H(1, 0), "hessian_tilde_block asymmetric");
}

void check_geometric_decay() {
    const int d = 7;
    const double tau = 7.0, alpha = 1.0 / 800.0, eta = 0.05;
    RandomStream rng(21);
    SslModel m = random_ssl_model(d, alpha, rng);
    TrainConfig tc;
    tc.eta = eta;
    tc.iters = 50;
    tc.record_every = 1;
    const auto traj = gd_train(
        m, [&](const SslModel& p, long) { return grad_tilde(p, tau); },
        [&](const SslModel& p, long) { return loss_tilde(p, tau); }, tc);
    const double factor = 1.0 - 2.0 * eta * alpha;
    for (size_t t = 1; t < traj.snapshots.size(); ++t) {
        for (int j = 0; j < 2; ++j)
            for (int k = 2; k < d; ++k) {
                const double want = factor * traj.snapshots[t - 1].W(j, k);
                expect(std::abs(traj.snapshots[t].W(j, k) - want) <= 1e-10,
                       "k>=3 coordinate decay is not geometric");
            }
    }
}

void check_hoffman_wielandt() {
    RandomStream rng(31);
    for (int rep = 0; rep < 200; ++rep) {
        const int n = 2 + static_cast<int>(rng.uniform_u64(7));
        Eigen::MatrixXd A(n, n), N(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                A(i, j) = A(j, i) = rng.uniform(-3.0, 3.0);
                N(i, j) = N(j, i) = rng.uniform(-0.5, 0.5);
            }
        const auto [lhs, rhs, ok] = hoffman_wielandt_check(A, A + N);
        expect(ok, "eigenvalue perturbation bound violated");
        expect(lhs <= rhs + 1e-9, "lhs exceeds rhs");
    }
}

void check_projection_properties() {
    RandomStream rng(33);
    const int d = 12;
    for (int rep = 0; rep < 20; ++rep) {
        Eigen::MatrixXd W(2, d);
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < d; ++k) W(j, k) = rng.uniform(-2.0, 2.0);
        Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
        e[static_cast<int>(rng.uniform_u64(d))] = 1.0;
        const double p = projection_onto_rowspan(W, e);
        expect(p >= 0.0 && p <= 1.0 + 1e-8, "projection out of range");
        // Row-span invariance under an invertible 2x2 recombination.
        Eigen::Matrix2d M;
        do {
            M << rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2);
        } while (std::abs(M.determinant()) < 0.3);
        const double q = projection_onto_rowspan(M * W, e);
        expect(std::abs(p - q) <= 1e-10, "projection not invariant under row recombination");
        double sum = 0.0;
        for (int k = 0; k < d; ++k) {
            const double pk = projection_onto_rowspan(W, basis_vector := [&] {
                Eigen::VectorXd b = Eigen::VectorXd::Zero(d);
                b[k] = 1.0;
                return b;
            }());
            sum += pk * pk;
        }
        expect(std::abs(sum - 2.0) <= 1e-8, "squared projections over a basis do not sum to 2");
    }
}

void check_confidence_interval() {
    const SeedSummary a = aggregate_ci({1.0, 1.0, 1.0});
    expect(a.mean == 1.0 && a.ci_half_width == 0.0, "constant CI");
    const SeedSummary b = aggregate_ci({0.0, 2.0});
    expect(std::abs(b.mean - 1.0) <= 1e-15 && std::abs(b.ci_half_width - 1.96) <= 1e-12,
           "two-point CI");
    const SeedSummary c = aggregate_ci({2.0, 0.0});
    expect(c.mean == b.mean && c.ci_half_width == b.ci_half_width, "CI not permutation invariant");
}

void check_solver() {
    const auto [w1, w2] = solve_tilde_minimum(7.0, 1.0 / 800.0, Activation::Sigmoid, 1e-10, 10);
    expect(w1[0] >= 3.1 && w1[0] <= 3.9, "solver first coordinate out of range");
    expect(7.0 * w1[1] >= 9.0, "solver tau*w2 below 9");
    expect(std::abs(w2[0] + w1[0]) <= 1e-8 && std::abs(w2[1] - w1[1]) <= 1e-12,
           "solver mirror symmetry");
}

void check_csv_round_trip() {
    RandomStream rng(55);
    for (int i = 0; i < 200; ++i) {
        const double v = std::exp(rng.uniform(-30.0, 30.0)) * (rng.next_bool() ? 1 : -1);
        expect(parse_double(format_double(v)) == v, "csv double round trip not exact");
    }
}

}  // namespace

int run_verify(std::ostream& os) {
    const Check checks[] = {
        {"activation symmetry identities", check_activation_symmetry},
        {"activation derivative bounds", check_derivative_bounds},
        {"dataset determinism and invariants", check_dataset_determinism},
        {"noise-free template means", check_noise_free_templates},
        {"objective consistency chain", check_loss_chain},
        {"analytic gradients vs finite differences", check_gradient_fd},
        {"hessian block structure", check_hessian_structure},
        {"geometric decay of k>=3 coordinates", check_geometric_decay},
        {"eigenvalue perturbation bound", check_hoffman_wielandt},
        {"projection properties", check_projection_properties},
        {"confidence interval arithmetic", check_confidence_interval},
        {"stationary-point solver contract", check_solver},
        {"csv round trip", check_csv_round_trip},
    };
    int failures = 0;
    for (const Check& c : checks) {
        try {
            c.fn();
            os << "[ok]   " << c.name << "\n";
        } catch (const std::exception& e) {
            ++failures;
            os << "[FAIL] " << c.name << ": " << e.what() << "\n";
        }
    }
    if (failures == 0)
        os << "all " << std::size(checks) << " property checks passed\n";
    else
        os << failures << " property check(s) failed\n";
    return failures;
}

}  // namespace ssllab
