#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lgg {

enum class ErrorKind {
  InvalidInput,      // malformed or inconsistent data
  InvalidParameter,  // a parameter outside its domain
  NumericalFailure,  // a computation that could not complete (singular solve, ...)
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void throw_invalid_input(const std::string& message);
[[noreturn]] void throw_invalid_parameter(const std::string& message);
[[noreturn]] void throw_numerical_failure(const std::string& message);

}  // namespace lgg
