#include "rhsa/error.hpp"

namespace rhsa {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::EmptyInput: return "empty_input";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Io: return "io";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::Missing: return "missing";
  }
  return "unknown";
}

}  // namespace rhsa
