#include "ssllab/metrics.hpp"

#include <cmath>

namespace ssllab {

double projection_onto_rowspan(const Eigen::MatrixXd& W, const Eigen::VectorXd& e) {
    if (W.rows() != 2 || W.cols() != e.size())
        throw InputError("projection_onto_rowspan: W must be 2 x d with d = |e|");
    const Eigen::Matrix2d gram = W * W.transpose();
    const double tr = gram(0, 0) + gram(1, 1);
    const double det = gram(0, 0) * gram(1, 1) - gram(0, 1) * gram(1, 0);
    const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
    const double lo = 0.5 * tr - disc, hi = 0.5 * tr + disc;
    if (!(lo > 0.0) || hi / lo >= 1e12)
        throw DegenerateSpan("projection_onto_rowspan: rows are numerically dependent");

    // Modified Gram-Schmidt on the two rows.
    Eigen::VectorXd q1 = W.row(0);
    q1 /= q1.norm();
    Eigen::VectorXd q2 = W.row(1).transpose() - q1.dot(W.row(1).transpose()) * q1;
    q2 /= q2.norm();
    return std::hypot(q1.dot(e), q2.dot(e));
}

double sl_hidden_feature_norm(const Eigen::MatrixXd& W_sl) {
    return W_sl(0, 1) * W_sl(0, 1) + W_sl(1, 1) * W_sl(1, 1);
}

SeedSummary aggregate_ci(const std::vector<double>& values) {
    if (values.size() < 2) throw InputError("aggregate_ci: need at least 2 values");
    SeedSummary s;
    s.values = values;
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / n;
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    s.ci_half_width = 1.96 * sd / std::sqrt(n);
    return s;
}

}  // namespace ssllab
