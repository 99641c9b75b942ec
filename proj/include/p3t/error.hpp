#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace p3t {

enum class ErrorKind {
  BadVertex,
  DisconnectedInput,
  NotTwoConnected,
  NotPlanarRotation,
  Nonplanar,
  VertexMismatch,
  SplitAcrossFaces,
  NotPermutation,
  NotATriangle,
  NotAThreeTree,
  NotPartial3Tree,
  TooSmall,
  TooLarge,
  NotSeparating,
  NotArticulation,
  NotTwoCut,
  InternalK33,
  NoSuchFace,
  NotTriangulation,
  Parse,
  Internal,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::BadVertex: return "BadVertex";
    case ErrorKind::DisconnectedInput: return "DisconnectedInput";
    case ErrorKind::NotTwoConnected: return "NotTwoConnected";
    case ErrorKind::NotPlanarRotation: return "NotPlanarRotation";
    case ErrorKind::Nonplanar: return "NonplanarError";
    case ErrorKind::VertexMismatch: return "VertexMismatch";
    case ErrorKind::SplitAcrossFaces: return "SplitAcrossFaces";
    case ErrorKind::NotPermutation: return "NotPermutation";
    case ErrorKind::NotATriangle: return "NotATriangle";
    case ErrorKind::NotAThreeTree: return "NotAThreeTree";
    case ErrorKind::NotPartial3Tree: return "NotPartial3Tree";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotSeparating: return "NotSeparating";
    case ErrorKind::NotArticulation: return "NotArticulation";
    case ErrorKind::NotTwoCut: return "NotTwoCut";
    case ErrorKind::InternalK33: return "InternalK33";
    case ErrorKind::NoSuchFace: return "NoSuchFace";
    case ErrorKind::NotTriangulation: return "NotTriangulation";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this type; `kind()`
/// distinguishes the contract violation.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void ensure(bool cond, const char* what) {
  if (!cond) fail(ErrorKind::Internal, what);
}

}  // namespace p3t
