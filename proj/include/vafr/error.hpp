// Copyright 2026 The vafr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace vafr {

// Base of every error thrown by this library.  The three concrete
// classes map onto the CLI exit codes: validation 2, I/O 3, numeric
// domain 4.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Bad arguments, malformed configs, inconsistent sizes.
class ValidationError : public Error {
  public:
    using Error::Error;
};

// File and image read/write failures.
class IoError : public Error {
  public:
    using Error::Error;
};

// Math evaluated outside its legal domain (eccentricity past the edge
// of the model, log-polar radius past the display corner, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

namespace detail {

// Small stand-in for std::format (not in libstdc++ 11).
template <typename... Args>
std::string msg(const Args &...args) {
    std::ostringstream os;
    os.precision(17);
    (os << ... << args);
    return os.str();
}

}  // namespace detail

}  // namespace vafr
