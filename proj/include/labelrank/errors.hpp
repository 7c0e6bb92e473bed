#pragma once

#include <stdexcept>
#include <string>

namespace labelrank {

// Base of every exception thrown by this library.
class error : public std::runtime_error {
  public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed value: non-bijective ranks, labels out of range, unreadable rows.
class validation_error : public error {
  public:
    using error::error;
};

// Operands of incompatible sizes (e.g. permutations over different K).
class dimension_error : public error {
  public:
    using error::error;
};

// Argument outside its documented domain.
class parameter_error : public error {
  public:
    using error::error;
};

// Exact ties where a strict ordering is required.
class degeneracy_error : public error {
  public:
    using error::error;
};

// alpha at an endpoint of (0,1) where a closed-form bound is undefined.
// The limit conventions are documented in the README.
class endpoint_error : public parameter_error {
  public:
    using parameter_error::parameter_error;
};

// Filesystem and stream failures.
class io_error : public error {
  public:
    using error::error;
};

}  // namespace labelrank
