#include "ssllab/regions.hpp"

#include <algorithm>
#include <cmath>

namespace ssllab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double k_halfwidth(int d) { return 3.0 / std::pow(d, 0.49); }

Region make(double c1_lo, double c1_hi, double t2_lo, double t2_hi, double ck_hw, double tau,
            int d) {
    Region r;
    r.c1 = {c1_lo, c1_hi};
    r.tau_c2 = {t2_lo, t2_hi};
    r.ck = {-ck_hw, ck_hw};
    r.tau = tau;
    r.d = d;
    return r;
}
}  // namespace

bool Region::contains(const Eigen::VectorXd& x) const {
    if (static_cast<int>(x.size()) != d) return false;
    if (!c1.contains(x[0])) return false;
    if (!tau_c2.contains(tau * x[1])) return false;
    for (int k = 2; k < d; ++k)
        if (!ck.contains(x[k])) return false;
    return true;
}

Eigen::VectorXd Region::sample(RandomStream& rng, double span_cap) const {
    Eigen::VectorXd x(d);
    x[0] = rng.uniform(c1.lo, c1.hi);
    const double t2_hi = tau_c2.bounded() ? tau_c2.hi : tau_c2.lo + span_cap;
    x[1] = rng.uniform(tau_c2.lo, t2_hi) / tau;
    for (int k = 2; k < d; ++k) x[k] = (ck.lo == ck.hi) ? ck.lo : rng.uniform(ck.lo, ck.hi);
    return x;
}

Region Region::mirrored() const {
    Region r = *this;
    r.c1 = {-c1.hi, -c1.lo};
    return r;
}

Region Region::d1(double tau, int d) { return make(3.1, 3.9, 8.5, 9.0, k_halfwidth(d), tau, d); }
Region Region::d2(double tau, int d) { return d1(tau, d).mirrored(); }

Region Region::d1_tilde(double tau, int d) { return make(3.1, 3.9, 9.0, kInf, 0.0, tau, d); }
Region Region::d2_tilde(double tau, int d) { return d1_tilde(tau, d).mirrored(); }

Region Region::d1_b0(double tau, int d) { return make(2.3, 4.7, 8.5, kInf, k_halfwidth(d), tau, d); }
Region Region::d2_b0(double tau, int d) { return d1_b0(tau, d).mirrored(); }

Region Region::d1_tanh(double tau, int d) {
    return make(2.7, 3.1, 5.75, 6.1, k_halfwidth(d), tau, d);
}
Region Region::d2_tanh(double tau, int d) { return d1_tanh(tau, d).mirrored(); }

Region Region::d1_tilde_tanh(double tau, int d) { return make(2.75, 3.1, 6.1, kInf, 0.0, tau, d); }
Region Region::d2_tilde_tanh(double tau, int d) { return d1_tilde_tanh(tau, d).mirrored(); }

Region Region::d1_tilde_tanh_wide(double tau, int d) {
    return make(2.7, 3.1, 6.1, kInf, 0.0, tau, d);
}
Region Region::d2_tilde_tanh_wide(double tau, int d) {
    return d1_tilde_tanh_wide(tau, d).mirrored();
}

Region Region::d1_b0_tanh(double tau, int d) {
    return make(2.7, 3.1, 5.75, kInf, k_halfwidth(d), tau, d);
}
Region Region::d2_b0_tanh(double tau, int d) { return d1_b0_tanh(tau, d).mirrored(); }

Region Region::solver_slice(Activation act, double tau, int d) {
    return act == Activation::Sigmoid ? d1_tilde(tau, d) : d1_tilde_tanh(tau, d);
}

Region Region::init_box(Activation act, double tau, int d) {
    return act == Activation::Sigmoid ? d1(tau, d) : d1_tanh(tau, d);
}

Region Region::scan_box(Activation act, double tau, int d) {
    return act == Activation::Sigmoid ? d1_b0(tau, d) : d1_b0_tanh(tau, d);
}

}  // namespace ssllab
