/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace qmlkit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bad input: shapes, indices, lengths, out-of-domain values.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// A parameter occurs in a form the parameter-shift rule cannot differentiate.
class UnsupportedParameterError : public ValidationError {
public:
  UnsupportedParameterError(const std::string &parameter, const std::string &why)
      : ValidationError("parameter '" + parameter + "' is not shift-differentiable: " + why),
        parameter_(parameter) {}

  const std::string &parameter() const noexcept { return parameter_; }

private:
  std::string parameter_;
};

/// An objective or estimate produced a NaN or infinity.
class NonFiniteError : public Error {
public:
  using Error::Error;
};

/// Conditioning on evidence that has zero probability mass (or drew no samples).
class NoSupportError : public Error {
public:
  using Error::Error;
};

/// Malformed serialized input. `path()` names the offending field, e.g. `$.gates[2].kind`.
class SchemaError : public ValidationError {
public:
  SchemaError(const std::string &path, const std::string &what)
      : ValidationError(path + ": " + what), path_(path) {}

  const std::string &path() const noexcept { return path_; }

private:
  std::string path_;
};

} // namespace qmlkit
