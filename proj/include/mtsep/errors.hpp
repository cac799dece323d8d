#pragma once

#include <stdexcept>
#include <string>

namespace mtsep {

// Parameter or input-document contract violation (CLI exit status 2).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A requested computation needs more states than the configured cap allows.
class StateSpaceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical failure: singular system or non-convergence (CLI exit status 1).
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A verifier was invoked outside the special case it is defined for.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace mtsep
