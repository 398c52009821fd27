#pragma once

#include <stdexcept>
#include <string>

namespace frobfix {

/// A computation would exceed a configured size ceiling (field size, tower
/// level, enumeration bound).
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace frobfix
