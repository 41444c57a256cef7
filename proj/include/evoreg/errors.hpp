#pragma once

#include <stdexcept>
#include <string>

namespace evoreg {

// Error taxonomy.  Everything derives from std::runtime_error so callers can
// catch coarsely; the distinct types exist because the CLI maps them to
// distinct messages and exit paths.

struct dimension_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parameter_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a signal's tail is too large for the truncated window to be
// trusted; carries the measured tail ratio.
struct truncation_error : std::runtime_error {
    double tail_ratio;
    truncation_error(const std::string& msg, double ratio)
        : std::runtime_error(msg), tail_ratio(ratio) {}
};

struct symbol_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A fractional derivative left too much energy near the Nyquist band: the
// input is not in the discrete H^alpha.
struct regularity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct material_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct admissibility_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct wellposedness_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct solver_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct applicability_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace evoreg
