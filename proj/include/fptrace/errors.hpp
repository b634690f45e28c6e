#pragma once

#include <stdexcept>

namespace fptrace {

/// A numerical procedure did not reach its requested accuracy.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Query dimension outside what a backend supports.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Monte Carlo run produced no usable trials.
class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fptrace
