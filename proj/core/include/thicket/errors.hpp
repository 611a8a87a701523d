#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace thicket {

/// Raised when an exact search would exceed its configured resource cap.
/// Callers that want an approximate answer must opt in explicitly; nothing
/// in this library silently degrades to an estimate.
class cap_exceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads an integer cap override from the environment, falling back to the
/// built-in default. Values <= 0 are ignored.
std::int64_t cap_from_env(const char* name, std::int64_t fallback);

} // namespace thicket
