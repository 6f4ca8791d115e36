#ifndef DCOV_ERROR_HPP
#define DCOV_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dcov {

/// Input violates a documented precondition (shape, finiteness, range).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two operands have incompatible sizes.
class SizeMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

}  // namespace dcov

#endif  // DCOV_ERROR_HPP
