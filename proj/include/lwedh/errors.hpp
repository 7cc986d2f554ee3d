#pragma once

#include <stdexcept>

namespace lwedh {

// Malformed or inconsistent serialized data (bad magic, truncation, digest
// mismatch, unparsable image file).
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violated precondition of a cryptographic or embedding operation
// (dimension mismatch, capacity exceeded, retry limit, infeasible params).
struct CryptoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace lwedh
