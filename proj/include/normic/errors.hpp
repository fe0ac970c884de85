#pragma once

#include <stdexcept>
#include <string>

namespace normic {

/// Input violates a documented precondition or schema.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A bounded search (primes, parameters, enumeration) ran out of room.
struct SearchExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A certificate failed to verify.
struct CertificateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Should never fire; signals a bug.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

inline void ensure(bool cond, const std::string& what) {
    if (!cond) throw InternalError(what);
}

inline void require(bool cond, const std::string& what) {
    if (!cond) throw InputError(what);
}

}  // namespace normic
