#pragma once

#include "ssllab/errors.hpp"

namespace ssllab {

enum class Activation { Sigmoid, Tanh };

// Overflow-free logistic sigmoid.
double sigmoid(double x);

// Value (order 0) or derivative of the activation, orders 0..3.
// Derivatives use the polynomial-in-value identities, so they saturate
// cleanly for large |x|.
double activation_value(Activation kind, int order, double x);

// h(x) = sigma'(x) * sigma(x) = sigma^2(x)(1 - sigma(x)); order 0 or 1.
// h is the derivative of sigma^2/2 and drives the root structure of the
// noise-free objective.
double h_value(int order, double x);

// h generalized to either activation: h = act' * act.
double h_general(Activation kind, int order, double x);

}  // namespace ssllab
