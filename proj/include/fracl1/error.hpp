#pragma once

#include <stdexcept>

namespace fracl1 {

/// Raised when a step solve (scalar root, tridiagonal, Newton, fixed point) fails.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fracl1
