#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rhsa {

enum class ErrorKind {
  InvalidArgument,
  EmptyInput,
  Parse,
  Io,
  Degenerate,
  Missing,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rhsa
