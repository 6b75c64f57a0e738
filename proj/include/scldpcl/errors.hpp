#pragma once

#include <stdexcept>
#include <string>

namespace scldpcl {

// Bad construction parameters or structurally invalid inputs.
struct ConstructionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed file or config contents.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace scldpcl
