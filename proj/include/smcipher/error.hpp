#pragma once

#include <stdexcept>
#include <string>

namespace smcipher {

// Raised when a caller breaks a documented precondition (range, shape, round
// counts). The CLI maps it to exit code 3.
class contract_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Statistic is undefined for the input, e.g. correlation of a constant image.
class degenerate_input_error : public contract_error {
 public:
  using contract_error::contract_error;
};

namespace detail {

inline void require(bool condition, const char* what) {
  if (!condition) {
    throw contract_error(what);
  }
}

}  // namespace detail

}  // namespace smcipher
