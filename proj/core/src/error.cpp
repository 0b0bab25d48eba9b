#include "cabdm/error.hpp"

namespace cabdm {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidRule: return "invalid rule";
    case ErrorKind::kAlphabet: return "alphabet error";
    case ErrorKind::kSize: return "size error";
    case ErrorKind::kParameter: return "parameter error";
    case ErrorKind::kIndex: return "index error";
    case ErrorKind::kEmptyInput: return "empty input";
    case ErrorKind::kCoverage: return "coverage error";
    case ErrorKind::kCorruptTable: return "corrupt table";
    case ErrorKind::kResourceGuard: return "resource guard";
    case ErrorKind::kIo: return "i/o error";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace cabdm
