#ifndef PALDG_ERRORS_HPP
#define PALDG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace paldg {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Flux/Maxwellian evaluation failure or inadmissible macro state.
struct ModelError : Error {
    using Error::Error;
};

// Invalid run configuration (detected before any allocation).
struct ConfigError : Error {
    using Error::Error;
};

// Linear-algebra failure in the implicit transport solve.
struct SolverError : Error {
    using Error::Error;
};

// Collision denominator within the singular guard.  Carries the composition
// stage index when raised at plan time (-1 for a direct node-level call).
struct SingularCollisionError : SolverError {
    SingularCollisionError(const std::string& msg, int stage = -1)
        : SolverError(msg), stage_index(stage) {}
    int stage_index;
};

}  // namespace paldg

#endif
