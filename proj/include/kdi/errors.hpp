#pragma once

#include <stdexcept>
#include <string>

namespace kdi {

// Malformed or unusable input data: bad CSV cells, missing columns,
// non-finite training values. The CLI maps this to exit code 3, while
// std::invalid_argument (bad arguments/flags) maps to exit code 2.
class DataError : public std::runtime_error {
public:
  explicit DataError(const std::string& message)
    : std::runtime_error(message) {}
};

} // namespace kdi
