#pragma once

#include <stdexcept>
#include <string>

namespace oscsheet {

// Input/domain violations.  The CLI maps these to exit code 2.

struct branch_point_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct pole_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct margin_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct parity_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Bad path geometry: too close to a singular point, malformed, wrong kind.
struct path_error : std::domain_error {
    using std::domain_error::domain_error;
};

// A path that was accepted up front but ran into a root collision while
// being tracked (step size underflowed between two coalescing roots).
struct collision_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Numerical failures.  The CLI maps these to exit code 1.

struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Root matching or label continuation could not be resolved unambiguously.
struct tracking_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace oscsheet
