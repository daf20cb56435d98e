// errors.hpp - exception hierarchy shared by all modules.
//
// Two families matter for the CLI exit codes: IOError/FormatError mean the
// problem is with a file (exit 1), ValidationError and its children mean the
// inputs or arguments violate a precondition (exit 2).
#pragma once

#include <stdexcept>
#include <string>

namespace sciq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File-level problems: unreadable paths, short reads, failed writes.
struct IOError : Error {
    using Error::Error;
};

// The file exists but its contents are not what they claim to be.
struct FormatError : IOError {
    using IOError::IOError;
};

struct UnsupportedDtypeError : FormatError {
    using FormatError::FormatError;
};

// Precondition violations on in-memory inputs or arguments.
struct ValidationError : Error {
    using Error::Error;
};

struct EmptyInputError : ValidationError {
    using ValidationError::ValidationError;
};

struct DegenerateInputError : ValidationError {
    using ValidationError::ValidationError;
};

struct LookupError : ValidationError {
    using ValidationError::ValidationError;
};

struct SampleSizeError : ValidationError {
    using ValidationError::ValidationError;
};

} // namespace sciq
