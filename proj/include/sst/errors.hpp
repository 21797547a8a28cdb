#pragma once

#include <stdexcept>
#include <string>

namespace sst {

// Malformed input: bad letters, unparsable files, unknown states.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Well-formed input on which the requested operation is undefined
// (not synchronizing, not invertible, bound exceeded, ...).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace sst
