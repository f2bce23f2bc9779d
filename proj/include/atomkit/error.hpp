#pragma once

#include <stdexcept>
#include <string>

namespace atomkit {

/// Argument refers to something outside the object's domain (unknown atom,
/// mismatched carrier or signature).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Numeric parameter outside its admissible range.
class ParameterError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Dimension or coordinate index out of range.
class IndexError : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

/// An enumeration or search would exceed its configured size cap.
class CapError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed, unsupported or inconsistent file content.
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace atomkit
