#include "ssllab/synth_data.hpp"

#include <cinttypes>
#include <cstdio>
#include <ostream>

namespace ssllab {

namespace {

// Shared by sample_dataset and sample_general_dataset so the degenerate
// general case (P=1, Q=1) matches the four-kind sampler draw-for-draw.
int kind_from_bits(std::uint64_t u) {
    const bool negative = (u & 1u) != 0;
    const bool hidden = (u & 2u) != 0;
    return 1 + (negative ? 2 : 0) + (hidden ? 1 : 0);
}

void append_csv_double(std::string& line, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    line += buf;
}

}  // namespace

void DistributionConfig::validate() const {
    if (d < 3) throw ConfigError("DistributionConfig: d must be >= 3");
    if (!(tau > 1.0)) throw ConfigError("DistributionConfig: tau must be > 1");
    if (!(rho >= 0.0)) throw ConfigError("DistributionConfig: rho must be >= 0");
    if (n < 4) throw ConfigError("DistributionConfig: n must be >= 4");
}

Eigen::VectorXd kind_template(int kind, int d, double tau) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(d);
    x[0] = (kind == 1 || kind == 2) ? 1.0 : -1.0;
    if (kind == 2 || kind == 4) x[1] = tau;
    return x;
}

int label_for_kind(int kind) { return (kind == 3 || kind == 4) ? 1 : 0; }

Eigen::VectorXd Dataset::kind_template(int kind) const {
    return ssllab::kind_template(kind, config.d, config.tau);
}

Dataset sample_dataset(const DistributionConfig& cfg) {
    cfg.validate();
    Dataset data;
    data.config = cfg;
    data.points.reserve(cfg.n);
    const std::uint64_t base = tagged_key(cfg.seed, StreamTag::Dataset);
    for (int i = 0; i < cfg.n; ++i) {
        RandomStream st(derive_key(base, static_cast<std::uint64_t>(i)));
        const int kind = kind_from_bits(st.next_u64());
        Datapoint p;
        p.kind = kind;
        p.label = label_for_kind(kind);
        p.x = kind_template(kind, cfg.d, cfg.tau);
        if (cfg.rho > 0.0) {
            for (int k = 0; k < cfg.d; ++k) p.x[k] += cfg.rho * st.next_normal();
        }
        data.counts[kind - 1] += 1;
        data.points.push_back(std::move(p));
    }
    return data;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> sample_augmented_pair(const Eigen::VectorXd& x,
                                                                  double rho, RandomStream& rng) {
    if (!(rho >= 0.0)) throw ConfigError("sample_augmented_pair: rho must be >= 0");
    Eigen::VectorXd a = x, b = x;
    for (Eigen::Index k = 0; k < x.size(); ++k) a[k] += rho * rng.next_normal();
    for (Eigen::Index k = 0; k < x.size(); ++k) b[k] += rho * rng.next_normal();
    return {std::move(a), std::move(b)};
}

Dataset sample_general_dataset(int P, int Q, double tau, int n, int d, std::uint64_t seed) {
    if (P < 1 || Q < 1) throw ConfigError("sample_general_dataset: P and Q must be positive");
    if (P + Q > d) throw DimensionError("sample_general_dataset: P + Q must be <= d");
    if (n < 1) throw ConfigError("sample_general_dataset: n must be positive");

    Dataset data;
    data.config.d = d;
    data.config.tau = tau;
    data.config.rho = 0.0;
    data.config.n = n;
    data.config.seed = seed;
    data.points.reserve(n);

    const std::uint64_t base = tagged_key(seed, StreamTag::Dataset);
    for (int i = 0; i < n; ++i) {
        RandomStream st(derive_key(base, static_cast<std::uint64_t>(i)));
        const std::uint64_t u = st.next_u64();
        const bool negative = (u & 1u) != 0;
        // hidden index 0 means the zero vector, 1..Q select e_{P+idx}; for
        // Q=1 this reduces to the four-kind sampler's hidden bit.
        const int hidden_idx = static_cast<int>(((u >> 1) % static_cast<std::uint64_t>(Q + 1)));
        const int label_idx = static_cast<int>((u >> 33) % static_cast<std::uint64_t>(P));
        const bool hidden = hidden_idx > 0;

        Datapoint p;
        p.kind = 1 + (negative ? 2 : 0) + (hidden ? 1 : 0);
        p.label = negative ? 1 : 0;
        p.x = Eigen::VectorXd::Zero(d);
        p.x[label_idx] = negative ? -1.0 : 1.0;
        if (hidden) p.x[P + hidden_idx - 1] = tau;
        data.counts[p.kind - 1] += 1;
        data.points.push_back(std::move(p));
    }
    return data;
}

void write_dataset_csv(const Dataset& data, std::ostream& os) {
    std::string line;
    for (int k = 0; k < data.config.d; ++k) {
        line += "x";
        line += std::to_string(k + 1);
        line += ',';
    }
    line += "kind,label\n";
    os << line;
    for (const Datapoint& p : data.points) {
        line.clear();
        for (int k = 0; k < data.config.d; ++k) {
            append_csv_double(line, p.x[k]);
            line += ',';
        }
        line += std::to_string(p.kind);
        line += ',';
        line += std::to_string(p.label);
        line += '\n';
        os << line;
    }
}

}  // namespace ssllab
