#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace padix {

/// Thrown when a verification routine is called with a precision or horizon
/// too small for the requested range. Carries the smallest value that would
/// be accepted, so callers can retry or report it.
class InsufficientParameter : public std::invalid_argument {
public:
    InsufficientParameter(std::string parameter, std::uint64_t minimal,
                          const std::string& what)
        : std::invalid_argument(what),
          parameter_(std::move(parameter)),
          minimal_(minimal) {}

    const std::string& parameter() const noexcept { return parameter_; }
    std::uint64_t minimal() const noexcept { return minimal_; }

private:
    std::string parameter_;
    std::uint64_t minimal_;
};

} // namespace padix
