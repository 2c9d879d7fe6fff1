#include "ssllab/activations.hpp"

#include <cmath>

namespace ssllab {

double sigmoid(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double activation_value(Activation kind, int order, double x) {
    if (order < 0 || order > 3) throw InputError("activation_value: order must be in 0..3");
    if (kind == Activation::Sigmoid) {
        const double s = sigmoid(x);
        const double s1 = s * (1.0 - s);
        switch (order) {
            case 0: return s;
            case 1: return s1;
            case 2: return s1 * (1.0 - 2.0 * s);
            default: return s1 * (1.0 - 6.0 * s1);
        }
    }
    const double t = std::tanh(x);
    const double t1 = 1.0 - t * t;
    switch (order) {
        case 0: return t;
        case 1: return t1;
        case 2: return -2.0 * t * t1;
        default: return t1 * (6.0 * t * t - 2.0);
    }
}

double h_value(int order, double x) {
    if (order < 0 || order > 1) throw InputError("h_value: order must be 0 or 1");
    const double s = sigmoid(x);
    if (order == 0) return s * s * (1.0 - s);
    return s * s * (1.0 - s) * (2.0 - 3.0 * s);
}

double h_general(Activation kind, int order, double x) {
    if (order < 0 || order > 1) throw InputError("h_general: order must be 0 or 1");
    if (kind == Activation::Sigmoid) return h_value(order, x);
    const double t = std::tanh(x);
    const double t1 = 1.0 - t * t;
    if (order == 0) return t * t1;
    return t1 * (1.0 - 3.0 * t * t);
}

}  // namespace ssllab
