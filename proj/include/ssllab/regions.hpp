#pragma once

#include <limits>

#include <Eigen/Core>

#include "ssllab/activations.hpp"
#include "ssllab/rng.hpp"

namespace ssllab {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;  // may be +infinity

    bool contains(double v) const { return v >= lo && v <= hi; }
    bool bounded() const { return std::isfinite(hi); }
};

// Axis-aligned region for one neuron row. The second coordinate is
// constrained through tau * x^(2) (the regions are specified that way),
// coordinates k >= 3 share one symmetric interval.
struct Region {
    Interval c1;        // x^(1)
    Interval tau_c2;    // tau * x^(2)
    Interval ck;        // x^(k), k >= 3
    double tau = 7.0;
    int d = 10;

    bool contains(const Eigen::VectorXd& x) const;

    // Uniform sample; an unbounded tau_c2 upper end is truncated at
    // tau_c2.lo + span_cap before sampling.
    Eigen::VectorXd sample(RandomStream& rng, double span_cap = 25.0) const;

    // Mirror image: first coordinate negated.
    Region mirrored() const;

    // Initialization boxes.
    static Region d1(double tau, int d);
    static Region d2(double tau, int d);
    // Slices containing the noise-free stationary point (k >= 3 pinned to 0).
    static Region d1_tilde(double tau, int d);
    static Region d2_tilde(double tau, int d);
    // Enlarged boxes on which the two-sided Hessian bounds are scanned.
    static Region d1_b0(double tau, int d);
    static Region d2_b0(double tau, int d);

    // Tanh-activation variants. The slice constructors come in two
    // published widths for the first coordinate: the default uses
    // [2.75, 3.1], the wide variant [2.7, 3.1].
    static Region d1_tanh(double tau, int d);
    static Region d2_tanh(double tau, int d);
    static Region d1_tilde_tanh(double tau, int d);
    static Region d2_tilde_tanh(double tau, int d);
    static Region d1_tilde_tanh_wide(double tau, int d);
    static Region d2_tilde_tanh_wide(double tau, int d);
    // Scan box for the tanh certification chain: the tanh initialization
    // box with the tau*x^(2) upper end opened up.
    static Region d1_b0_tanh(double tau, int d);
    static Region d2_b0_tanh(double tau, int d);

    // Region pair (row 1, row 2) for an activation's solver / scan chain.
    static Region solver_slice(Activation act, double tau, int d);
    static Region init_box(Activation act, double tau, int d);
    static Region scan_box(Activation act, double tau, int d);
};

}  // namespace ssllab
