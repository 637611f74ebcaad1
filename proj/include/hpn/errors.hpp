#pragma once

#include <stdexcept>
#include <string>

namespace hpn {

// Exit code mapping used by the CLI: tolerance 2, precondition 3, io 4.
struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& m) : std::runtime_error(m) {}
};

struct ToleranceError : std::runtime_error {
  explicit ToleranceError(const std::string& m) : std::runtime_error(m) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace hpn
