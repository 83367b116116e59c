#pragma once

#include <stdexcept>

namespace flatstats {

/// A request exceeds a documented work or memory cap. Argument errors use
/// std::invalid_argument / std::out_of_range.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace flatstats
