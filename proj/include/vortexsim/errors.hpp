#pragma once

#include <stdexcept>

namespace vortexsim {

// Malformed or inconsistent configuration input.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fit could not be carried out (too few points, unidentifiable amplitude, ...).
struct fit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem failures, reported with path context.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace vortexsim
