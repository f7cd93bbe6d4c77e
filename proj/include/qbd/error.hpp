#ifndef QBD_ERROR_HPP
#define QBD_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace qbd {

enum class ErrorCode {
  NotDivisible,
  DivisionByZero,
  PoleAtPoint,
  InvalidArgument,
  NotATree,
  NotNonsingular,
  DimensionMismatch,
  IndexKindMismatch,
  SingularMatrix,
  BdqZero,
  DegreeTooSmall,
  ParseError,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; the code identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qbd

#endif  // QBD_ERROR_HPP
