#pragma once

#include <stdexcept>
#include <string>

namespace cabdm {

enum class ErrorKind {
  kInvalidRule,
  kAlphabet,
  kSize,
  kParameter,
  kIndex,
  kEmptyInput,
  kCoverage,
  kCorruptTable,
  kResourceGuard,
  kIo,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library; callers branch on kind() when they
// need to distinguish failure classes (the CLI maps them to exit codes).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cabdm
