#pragma once

#include <stdexcept>
#include <string>

namespace rdpdhg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A user-supplied parameter or configuration value violates its contract.
class ValidationError : public Error
{
public:
  ValidationError(std::string field, std::string const &message)
    : Error(field + ": " + message)
    , field_(std::move(field))
  {
  }

  std::string const &field() const noexcept { return field_; }

private:
  std::string field_;
};

/// A model evaluation produced a non-finite value.
class BlowUpError : public Error
{
public:
  BlowUpError(std::string component, std::string const &where)
    : Error("model blow-up in component '" + component + "' (" + where + ")")
    , component_(std::move(component))
  {
  }

  std::string const &component() const noexcept { return component_; }

private:
  std::string component_;
};

/// Reading or writing a file failed.
class IoError : public Error
{
public:
  using Error::Error;
};

} // namespace rdpdhg
