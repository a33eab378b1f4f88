#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jordankit {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Elements of different kind, degree, dimension or field were combined.
struct CarrierMismatchError : Error {
  using Error::Error;
};

// Closure grew past the requested cap; partial_count is the number of
// elements found before giving up.
struct CapExceededError : Error {
  size_t partial_count;
  CapExceededError(const std::string& msg, size_t count) : Error(msg), partial_count(count) {}
};

struct NotNormalError : Error {
  using Error::Error;
};

struct OverLimitError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

// Hall condition gcd(|N|, [H:N]) = 1 fails, so no complement is guaranteed.
struct NoComplementError : Error {
  using Error::Error;
};

struct ModelViolationError : Error {
  using Error::Error;
};

struct ProfileError : Error {
  using Error::Error;
};

struct CatalogError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace jordankit
