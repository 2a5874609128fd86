#pragma once

#include <stdexcept>
#include <string>

namespace phibv {

enum class ErrorKind {
  InvalidYoung,
  OutOfRange,
  Domain,
  BadGrid,
  BudgetExceeded,
  TooLarge,
  MixedGrids,
  IndexBeyondHead,
  MixedExponents,
  PointNotOnGrid,
  GridMismatch,
  XiNotOnGrid,
  H3Unavailable,
  NotBounded,
  Precondition,
  Parse,
};

const char* to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries one of the kinds above so that
// callers (the CLI in particular) can branch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace phibv
