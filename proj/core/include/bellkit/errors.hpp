#pragma once

#include <stdexcept>
#include <string>

namespace bellkit {

/// Input fails a structural precondition (shape mismatch, bad range,
/// unparsable file, unsupported regime).
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// A combinatorial operation would exceed its configured size limit.
class capacity_error : public std::runtime_error {
 public:
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical solve ended without a usable answer.
class solver_error : public std::runtime_error {
 public:
  explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bellkit
