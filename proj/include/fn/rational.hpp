// Exact rational scalars on top of GMP.
//
// mpq_class does not canonicalize on construction (mpq_class(2,4) stays 2/4),
// so every entry point that builds a rational from raw numerator/denominator
// goes through make_rational(), which enforces gcd(|num|, den) = 1 and den >= 1.
// Values produced by arithmetic on canonical operands remain canonical.

#ifndef FN_RATIONAL_HPP
#define FN_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace fn {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Integer(num), Integer(den));
}

// Renders "num/den" with den >= 1, including "0/1" and "5/1": the unambiguous
// form used by the sparse-matrix text files.
inline std::string to_fraction_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Accepts "num/den" or a bare integer "num".
inline Rational parse_fraction(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return make_rational(Integer(s), Integer(1));
        return make_rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed rational: " + s);
    }
}

inline bool is_zero_value(const Rational& r) { return r == 0; }
inline bool is_zero_value(const Integer& z) { return z == 0; }

}  // namespace fn

#endif
