// Dense univariate polynomials with integer coefficients, ascending order.
//
// Used for cyclotomic polynomials and for Gaussian binomial coefficients.
// The coefficient vector never carries trailing zeros; the zero polynomial is
// the empty vector and has degree() == -1.

#ifndef FN_INTPOLY_HPP
#define FN_INTPOLY_HPP

#include <vector>

#include "fn/rational.hpp"

namespace fn {

class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Integer> coeffs);
    static IntPoly constant(const Integer& c);
    static IntPoly monomial(long degree, const Integer& c = 1);

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Integer>& coeffs() const { return c_; }
    Integer coeff(long k) const;  // 0 outside the stored range

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    bool operator==(const IntPoly& o) const { return c_ == o.c_; }

    // Quotient of an exact division; throws std::domain_error if the division
    // leaves a remainder or the divisor is not monic.  Cyclotomic polynomials
    // are built solely from monic exact divisions, so nothing more general is
    // needed.
    IntPoly divexact_monic(const IntPoly& divisor) const;

    Integer eval(const Integer& x) const;
    Rational eval(const Rational& x) const;

    std::string to_string(const std::string& var = "q") const;

private:
    std::vector<Integer> c_;
    void trim();
};

// The Gaussian binomial [a choose b]_q as a polynomial in q, via the Pascal
// recurrence  C(a,b) = C(a-1,b-1) + q^b * C(a-1,b).  No division is involved.
// b > a or b < 0 yields the zero polynomial.  Results are memoized.
IntPoly gaussian_binomial(long a, long b);

}  // namespace fn

#endif
