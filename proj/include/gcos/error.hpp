#pragma once

#include <stdexcept>

namespace gcos {

/// Raised for bad input data: unreadable or malformed files, invalid audio,
/// mismatched rolls. Precondition violations on arguments use
/// std::invalid_argument instead.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace gcos
