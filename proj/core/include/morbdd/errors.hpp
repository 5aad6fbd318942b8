#ifndef MORBDD_ERRORS_HPP_
#define MORBDD_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace morbdd {

// Base class for everything thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file; the message names the offending line.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

// Structurally valid input that violates a domain constraint.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

// A caller broke a documented precondition.
class ContractViolation : public Error {
 public:
  explicit ContractViolation(const std::string& what) : Error(what) {}
};

// A configured budget (nodes, memory, solver size) was exceeded.
class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what) : Error(what) {}
};

// Filesystem trouble: missing files, unwritable paths, short reads.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace morbdd

#endif  // MORBDD_ERRORS_HPP_
