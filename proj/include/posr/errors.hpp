#pragma once

#include <stdexcept>
#include <string>

namespace posr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A construction or scan would exceed a configured size cap.
class SizeLimitError : public Error {
public:
    using Error::Error;
};

/// Arguments fall outside the range where a formula or operation is defined.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Copy enumeration produced more distinct copies than the configured cap.
class CopyCapExceeded : public Error {
public:
    using Error::Error;
};

/// Malformed user input (descriptors, JSON files, flags).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Internal consistency violation, e.g. a solver model that breaks one-hot blocks.
class IntegrityError : public Error {
public:
    using Error::Error;
};

/// A coloring and a target list disagree on the number of colors.
class ArityError : public Error {
public:
    using Error::Error;
};

} // namespace posr
