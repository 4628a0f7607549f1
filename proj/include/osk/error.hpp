#ifndef OSK_ERROR_HPP
#define OSK_ERROR_HPP

#include <stdexcept>
#include <string>

namespace osk {

/// Input rejected by a precondition check (bad range, non-finite sample, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A linear or integral equation turned out singular or too ill-conditioned.
class SingularError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace osk

#endif  // OSK_ERROR_HPP
