#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ssllab {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A solver bracket or precondition of the landscape construction failed;
// carries the offending endpoint values in the message.
struct HypothesisViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivergenceError : std::runtime_error {
    DivergenceError(const std::string& what, std::int64_t iter)
        : std::runtime_error(what), iteration(iter) {}
    std::int64_t iteration;
};

struct CertificateUnavailable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateSpan : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ssllab
