#pragma once

#include <stdexcept>
#include <string>

namespace tpkit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input text does not conform to the expression or manifest grammar.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " (at position " + std::to_string(position) + ")"), pos(position) {}
    std::size_t pos;
};

struct ChartMismatchError : Error {
    using Error::Error;
};

struct DegreeError : Error {
    using Error::Error;
};

struct DimensionError : Error {
    using Error::Error;
};

struct DivisionByZeroError : Error {
    using Error::Error;
};

// A denominator vanishes at the evaluation point; the point lies in the
// excluded locus of the rational data.
struct PoleError : Error {
    using Error::Error;
};

struct NotInvertibleError : Error {
    using Error::Error;
};

struct TruncationError : Error {
    using Error::Error;
};

struct DegenerateOmegaError : Error {
    using Error::Error;
};

// Numeric (floating point) evaluation came within the configured safety
// margin of a pole.
struct PoleProximityError : Error {
    using Error::Error;
};

struct NonFiniteError : Error {
    using Error::Error;
};

} // namespace tpkit
