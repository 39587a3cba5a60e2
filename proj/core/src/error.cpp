#include "lgg/error.hpp"

namespace lgg {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput:
      return "invalid-input";
    case ErrorKind::InvalidParameter:
      return "invalid-parameter";
    case ErrorKind::NumericalFailure:
      return "numerical-failure";
  }
  return "unknown";
}

void throw_invalid_input(const std::string& message) {
  throw Error(ErrorKind::InvalidInput, message);
}

void throw_invalid_parameter(const std::string& message) {
  throw Error(ErrorKind::InvalidParameter, message);
}

void throw_numerical_failure(const std::string& message) {
  throw Error(ErrorKind::NumericalFailure, message);
}

}  // namespace lgg
