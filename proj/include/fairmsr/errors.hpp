#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fairmsr {

// Malformed instance data (bad CSV row, ragged dimensions, ...).
// line is 1-based, or 0 when no line applies.
class InstanceError : public std::runtime_error {
public:
    InstanceError(std::string msg, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg
                                  : msg),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// An enumeration budget was exceeded (subset or partition counts).
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fairmsr
