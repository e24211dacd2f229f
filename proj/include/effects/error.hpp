#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace effects {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct parse_error : error {
  std::size_t position;
  parse_error(const std::string& msg, std::size_t pos)
      : error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

struct type_error : error {
  using error::error;
};

struct domain_too_large : error {
  using error::error;
};

struct validation_error : error {
  using error::error;
};

struct derivation_limit : error {
  using error::error;
};

}  // namespace effects
