#pragma once

#include <stdexcept>

namespace neocalc {

/// Malformed text input (CSV contents, grid or gallery syntax). Bad values in
/// well-formed input are reported as std::invalid_argument instead.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace neocalc
