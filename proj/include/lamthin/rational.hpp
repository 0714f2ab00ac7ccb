#pragma once

// Exact arithmetic carrier. Every numeric quantity in this library is an
// arbitrary-precision rational; there is no floating point and no epsilon
// anywhere. mpq_class keeps values canonical (lowest terms, positive
// denominator), which is exactly the representation contract we need.

#include <gmpxx.h>

#include <string>

#include "errors.hpp"

namespace lamthin {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    require_input(den != 0, "rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "p", "-p", or "p/q" (decimal). Throws input_error on anything else,
/// including zero denominators. Never accepts floating-point notation.
inline Rat parse_rat(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    require_input(!s.empty(), "empty rational literal");
    const auto slash = s.find('/');
    try {
        Int num(slash == std::string::npos ? s : s.substr(0, slash), 10);
        Int den(slash == std::string::npos ? std::string("1") : s.substr(slash + 1), 10);
        require_input(den != 0, "rational literal with zero denominator: " + text);
        Rat q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw input_error("malformed rational literal: " + text);
    }
}

/// Canonical text form: "p" when the value is an integer, else "p/q".
inline std::string rat_str(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int rat_floor(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

inline Int rat_ceil(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

}  // namespace lamthin
