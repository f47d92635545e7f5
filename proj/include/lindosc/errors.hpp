// errors.hpp - exception types shared by the library and the CLI

#pragma once

#include <stdexcept>
#include <string>

namespace lindosc {

// Parameters or inputs violating a physical or structural constraint.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// NaN, overflow or an explicit stability violation during a computation.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace lindosc
