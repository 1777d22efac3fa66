#pragma once

#include <stdexcept>

namespace jsd {

// Invalid caller input: malformed distributions, weights, orders, tolerances.
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A generator spec that cannot be satisfied within the attempt budget.
class generation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File read/write failures; message carries the offending path.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Too few points left after windowing to fit a line.
class insufficient_data_error : public validation_error {
public:
    using validation_error::validation_error;
};

} // namespace jsd
