#include "ssllab/rng.hpp"

#include <cmath>

namespace ssllab {

namespace {

// Ziggurat tables for the standard normal, 128 layers (Marsaglia/Tsang
// layout, Doornik parameterization). X[i] are the layer abscissae,
// F[i] = exp(-X[i]^2/2).
struct ZigguratTables {
    static constexpr int kLayers = 128;
    static constexpr double kR = 3.442619855899;       // tail cut
    static constexpr double kV = 9.91256303526217e-3;  // per-layer area
    double x[kLayers + 1];
    double f[kLayers + 1];

    ZigguratTables() {
        const double fr = std::exp(-0.5 * kR * kR);
        x[0] = kV / fr;  // pseudo-base so the base layer carries the tail mass
        x[1] = kR;
        x[kLayers] = 0.0;
        for (int i = 2; i < kLayers; ++i) {
            x[i] = std::sqrt(-2.0 * std::log(kV / x[i - 1] + std::exp(-0.5 * x[i - 1] * x[i - 1])));
        }
        for (int i = 0; i <= kLayers; ++i) f[i] = std::exp(-0.5 * x[i] * x[i]);
    }
};

const ZigguratTables& tables() {
    static const ZigguratTables t;
    return t;
}

}  // namespace

double RandomStream::normal_tail(bool negative) {
    // Marsaglia tail sampler for |x| > R.
    double xx, yy;
    do {
        xx = -std::log(next_double_pos()) / ZigguratTables::kR;
        yy = -std::log(next_double_pos());
    } while (yy + yy < xx * xx);
    const double r = ZigguratTables::kR + xx;
    return negative ? -r : r;
}

double RandomStream::next_normal() {
    const ZigguratTables& t = tables();
    for (;;) {
        const std::uint64_t r = next_u64();
        const int i = static_cast<int>(r & 127u);
        const bool neg = (r & 128u) != 0;
        const double u = static_cast<double>(r >> 11) * 0x1.0p-53;  // [0,1)
        const double x = u * t.x[i];
        if (x < t.x[i + 1]) return neg ? -x : x;
        if (i == 0) return normal_tail(neg);
        const double fx = std::exp(-0.5 * x * x);
        if (t.f[i] + next_double() * (t.f[i + 1] - t.f[i]) < fx) return neg ? -x : x;
    }
}

}  // namespace ssllab
