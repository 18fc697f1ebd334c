#pragma once

#include <stdexcept>
#include <string>

namespace perspective {

// Input errors come from bad files or bad requests; internal errors are bugs.
enum class ErrorKind { input, not_found, internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Machine-readable identifier, e.g. "unknown_frame".
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

inline Error input_error(std::string code, const std::string& message) {
  return Error(ErrorKind::input, std::move(code), message);
}

inline Error not_found(std::string code, const std::string& message) {
  return Error(ErrorKind::not_found, std::move(code), message);
}

}  // namespace perspective
