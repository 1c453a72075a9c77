#pragma once

#include <stdexcept>
#include <string>

namespace sclim {

/// \brief A precondition on an argument was violated.
struct ParamError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// \brief Operands do not satisfy the correlation mode an operator requires.
struct ModeError : std::logic_error {
    using std::logic_error::logic_error;
};

/// \brief A pattern allocator ran out of unused variants.
struct ExhaustedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// \brief A circuit cannot be built for the requested configuration.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// \brief Malformed external data (image files and the like).
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// \brief A file could not be opened, read or written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sclim
