#pragma once

// Internal evaluation kernels shared by the objective and gradient
// implementations. The noise-free consistency contracts (loss_ssl at
// rho = 0 equals loss_hat, grad_ssl at rho = 0 equals grad_hat) hold
// bitwise only if both sides run the same expressions in the same order,
// so the per-pair products live here and nowhere else.

#include <Eigen/Core>

#include "ssllab/activations.hpp"

namespace ssllab::detail {

// Sequential dot product; strict left-to-right association.
inline double sdot(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < a.size(); ++k) acc += a[k] * b[k];
    return acc;
}

inline double frob2(const Eigen::MatrixXd& w) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < w.rows(); ++j)
        for (Eigen::Index k = 0; k < w.cols(); ++k) acc += w(j, k) * w(j, k);
    return acc;
}

inline double act0(Activation kind, double x) {
    if (kind == Activation::Sigmoid) return sigmoid(x);
    return std::tanh(x);
}

// First derivative from the activation value; same expression as
// activation_value(kind, 1, x).
inline double dact_from_value(Activation kind, double s) {
    if (kind == Activation::Sigmoid) return s * (1.0 - s);
    return 1.0 - s * s;
}

// Similarity value and gradient coefficients of one neuron on an
// augmentation pair with pre-activations (a, b):
//   ip = act(a) * act(b),   d/dw [ip] = cu * u + cv * v.
struct PairEval {
    double ip;
    double cu;
    double cv;
};

inline PairEval pair_eval(Activation kind, double a, double b) {
    const double sa = act0(kind, a);
    const double sb = act0(kind, b);
    const double da = dact_from_value(kind, sa);
    const double db = dact_from_value(kind, sb);
    return {sa * sb, da * sb, sa * db};
}

}  // namespace ssllab::detail
