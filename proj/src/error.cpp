#include "phibv/error.hpp"

namespace phibv {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidYoung: return "InvalidYoung";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::Domain: return "Domain";
    case ErrorKind::BadGrid: return "BadGrid";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::MixedGrids: return "MixedGrids";
    case ErrorKind::IndexBeyondHead: return "IndexBeyondHead";
    case ErrorKind::MixedExponents: return "MixedExponents";
    case ErrorKind::PointNotOnGrid: return "PointNotOnGrid";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::XiNotOnGrid: return "XiNotOnGrid";
    case ErrorKind::H3Unavailable: return "H3Unavailable";
    case ErrorKind::NotBounded: return "NotBounded";
    case ErrorKind::Precondition: return "Precondition";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace phibv
