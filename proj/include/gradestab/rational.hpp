#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <stdexcept>
#include <string>

namespace gradestab {

// Exact arbitrary-precision arithmetic on GMP storage. Expression templates
// are disabled so arithmetic results are plain values everywhere (std::min,
// containers, auto).
using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;

// Bad input data: a violated precondition or malformed serialized value.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// A broken internal invariant. Signals a bug, not bad input.
class invariant_violation : public std::logic_error {
public:
    explicit invariant_violation(const std::string& what) : std::logic_error(what) {}
};

inline Int rat_floor(const Rat& q) {
    Int n = numerator(q);
    Int d = denominator(q);  // normalized: d > 0
    Int t = n / d;
    if (n < 0 && t * d != n)
        --t;
    return t;
}

inline Int rat_ceil(const Rat& q) { return -rat_floor(-q); }

inline bool is_integer(const Rat& q) { return denominator(q) == 1; }

// gcd on positive rationals: the positive generator of a*Z + b*Z.
inline Rat rat_gcd(const Rat& a, const Rat& b) {
    Int num = gcd(Int(numerator(a) * denominator(b)), Int(numerator(b) * denominator(a)));
    return Rat(num, Int(denominator(a) * denominator(b)));
}

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

// Canonical text form: "p" when the denominator is 1, otherwise "p/q", q > 0.
inline std::string rational_to_string(const Rat& q) { return q.str(); }

// Accepts exactly the canonical forms (plus a leading '-'); anything else,
// including a zero denominator, is rejected.
inline Rat parse_rational(const std::string& text) {
    const auto fail = [&text]() -> Rat {
        throw validation_error("not a valid rational: \"" + text + "\"");
    };
    std::size_t i = 0;
    if (i < text.size() && text[i] == '-')
        ++i;
    const std::size_t num_begin = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        ++i;
    if (i == num_begin)
        return fail();
    if (i == text.size())
        return Rat(Int(text));
    if (text[i] != '/')
        return fail();
    const std::size_t slash = i;
    const std::size_t den_begin = ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        ++i;
    if (i == den_begin || i != text.size())
        return fail();
    Int num(text.substr(0, slash));
    Int den(text.substr(den_begin));
    if (den == 0)
        throw validation_error("zero denominator: \"" + text + "\"");
    return Rat(num, den);
}

}  // namespace gradestab
