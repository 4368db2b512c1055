#pragma once

#include <stdexcept>
#include <string>

namespace mazegp {

enum class ErrorCode {
  SyntaxError,
  UnknownSymbol,
  TypeMismatch,
  ArityError,
  UnsatisfiableType,
  InvalidDimensions,
  EmptyDataset,
  DuplicateName,
  IndexOutOfRange,
  EmptyReport,
  ConfigError,
  DataError,
  Internal,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::ArityError: return "ArityError";
    case ErrorCode::UnsatisfiableType: return "UnsatisfiableType";
    case ErrorCode::InvalidDimensions: return "InvalidDimensions";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::EmptyReport: return "EmptyReport";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::DataError: return "DataError";
    case ErrorCode::Internal: return "Internal";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(to_string(code)) + ": " + msg), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace mazegp
