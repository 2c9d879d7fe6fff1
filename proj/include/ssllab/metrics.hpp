#pragma once

#include <vector>

#include <Eigen/Core>

#include "ssllab/errors.hpp"

namespace ssllab {

// Length of the orthogonal projection of a unit vector onto span(w1, w2),
// computed through an orthonormal basis of the row span. Rank-deficient
// rows (Gram condition number >= 1e12) raise DegenerateSpan.
double projection_onto_rowspan(const Eigen::MatrixXd& W, const Eigen::VectorXd& e);

// (w1^(2))^2 + (w2^(2))^2 — the squared hidden-feature content of the
// extractor rows.
double sl_hidden_feature_norm(const Eigen::MatrixXd& W_sl);

struct SeedSummary {
    std::vector<double> values;
    double mean = 0.0;
    double ci_half_width = 0.0;  // 1.96 * sd / sqrt(count), normal approximation
};

SeedSummary aggregate_ci(const std::vector<double>& values);

}  // namespace ssllab
