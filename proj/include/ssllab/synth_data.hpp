#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "ssllab/errors.hpp"
#include "ssllab/rng.hpp"

namespace ssllab {

// Two-feature synthetic distribution: x = z*e1 + tau*e2*[hidden] + rho*xi.
// Kinds 1..4 are (+e1), (+e1 + tau e2), (-e1), (-e1 + tau e2).
struct DistributionConfig {
    int d = 10;            // ambient dimension
    double tau = 7.0;      // hidden-feature scale
    double rho = 0.0;      // datapoint noise scale
    int n = 100;           // sample count
    std::uint64_t seed = 0;

    void validate() const;
};

struct Datapoint {
    Eigen::VectorXd x;
    int kind = 0;   // in {1,2,3,4}
    int label = 0;  // 0 for kinds 1,2; 1 for kinds 3,4
};

struct Dataset {
    std::vector<Datapoint> points;
    std::array<std::int64_t, 4> counts{};  // n_1..n_4, sum to n
    DistributionConfig config;

    // Template point (noise-free) for a kind under this config.
    Eigen::VectorXd kind_template(int kind) const;
};

// Noise-free template of a kind (1..4) in d dimensions.
Eigen::VectorXd kind_template(int kind, int d, double tau);

int label_for_kind(int kind);

// Draws n points, kind i.i.d. uniform over {1..4}, Gaussian noise scaled by
// rho. Deterministic given (config, seed); per-point streams are keyed so
// the result does not depend on evaluation order.
Dataset sample_dataset(const DistributionConfig& cfg);

// Two independent isotropic Gaussian perturbations of x with per-coordinate
// standard deviation rho.
std::pair<Eigen::VectorXd, Eigen::VectorXd> sample_augmented_pair(const Eigen::VectorXd& x,
                                                                  double rho, RandomStream& rng);

// P label-related features e1..eP, hidden feature from {e_{P+1}..e_{P+Q}, 0},
// sign z = +-1 each with probability 1/2; x = z*e_L + tau*e_H (noise-free).
// kind/label encode (sign, hidden present) with the same mapping as above.
Dataset sample_general_dataset(int P, int Q, double tau, int n, int d, std::uint64_t seed);

// One point per line: coordinates, then kind and label columns, with a
// header row. Values are written round-trip exact.
void write_dataset_csv(const Dataset& data, std::ostream& os);

}  // namespace ssllab
