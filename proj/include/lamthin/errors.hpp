#pragma once

#include <stdexcept>
#include <string>

namespace lamthin {

/// Malformed or out-of-contract input (bad file, unknown vertex, crossing
/// family where a laminar one is required, ...). CLI exit code 3.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// A broken internal invariant: something the algorithms guarantee can never
/// happen did happen. CLI exit code 4; the test suite treats it as a hard
/// failure.
class invariant_error : public std::logic_error {
public:
    explicit invariant_error(const std::string& what) : std::logic_error(what) {}
};

inline void require_input(bool ok, const std::string& what) {
    if (!ok) throw input_error(what);
}

inline void require_invariant(bool ok, const std::string& what) {
    if (!ok) throw invariant_error(what);
}

}  // namespace lamthin
