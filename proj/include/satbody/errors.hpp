#pragma once

#include <stdexcept>
#include <string>

namespace satbody {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Violated call contract: bad dimensions, out-of-range index, invalid value.
struct PreconditionError : Error {
    using Error::Error;
};

/// A matrix that was required to have full column rank does not.
struct RankDeficientError : Error {
    RankDeficientError(const std::string& what, double ratio)
        : Error(what), sv_ratio(ratio) {}
    double sv_ratio; // s_min / s_max of the offending matrix
};

/// Numerical method failed to converge; never silently returns garbage.
struct NumericalError : Error {
    using Error::Error;
};

} // namespace satbody
