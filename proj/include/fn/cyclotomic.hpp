// Exact arithmetic in the cyclotomic field Q(zeta_d).
//
// Elements are stored on the power basis 1, x, ..., x^{phi(d)-1} of
// Q[x]/(Phi_d(x)), with rational coefficients, where Phi_d is the d-th
// cyclotomic polynomial and x stands for the primitive root of unity
// e^{2*pi*i/d}.  Phi_d itself is computed once per order by exact division of
// x^d - 1 by the product of the lower-order cyclotomic polynomials, and each
// order caches a table of the reduced powers x^k for k < d (in Q[x]/(Phi_d)
// the relation x^d = 1 holds, so every exponent reduces mod d first).
//
// Two elements must live in the same order to be combined; callers that mix
// orders embed into a common multiple first (embed_into / common order chosen
// as an lcm at construction time by the homology code).  Inversion runs the
// extended Euclidean algorithm against Phi_d over Q, which always succeeds on
// nonzero elements because Phi_d is irreducible.

#ifndef FN_CYCLOTOMIC_HPP
#define FN_CYCLOTOMIC_HPP

#include <complex>
#include <vector>

#include "fn/intpoly.hpp"
#include "fn/rational.hpp"

namespace fn {

class Cyclotomic {
public:
    // The zero element of Q(zeta_order).
    explicit Cyclotomic(long order = 1);

    static Cyclotomic from_rational(long order, const Rational& r);
    static Cyclotomic from_integer(long order, long v) {
        return from_rational(order, Rational(v));
    }
    // zeta_order^exp (exp may be negative; it reduces mod order).
    static Cyclotomic root_power(long order, long exp);

    long order() const { return order_; }
    // Coefficients on the power basis, length phi(order).
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Rational rational_value() const;  // throws unless is_rational()

    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator-() const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
    bool operator==(const Cyclotomic& o) const;
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    Cyclotomic inverse() const;  // throws std::domain_error on zero

    // Field automorphism zeta -> zeta^a, requiring gcd(a, order) = 1.
    Cyclotomic galois(long a) const;
    // Complex conjugation (the automorphism zeta -> zeta^{-1}).
    Cyclotomic conj() const;

    // Re-express this element in Q(zeta_new_order); new_order must be a
    // multiple of order().  zeta_order maps to zeta_new_order^{new/old}.
    Cyclotomic embed_into(long new_order) const;

    // Numerical image under zeta_d -> e^{2*pi*i/d}.
    std::complex<double> to_complex() const;

    std::string to_string() const;

private:
    long order_;
    std::vector<Rational> c_;
};

inline bool is_zero_value(const Cyclotomic& z) { return z.is_zero(); }

// Euler totient and the d-th cyclotomic polynomial (exposed for tests).
long euler_phi(long d);
const IntPoly& cyclotomic_polynomial(long d);

enum class CycOp { add, mul, inv };

// Dispatcher used by the CLI self-checks: inv ignores the second operand.
Cyclotomic cyc_arith(const Cyclotomic& a, const Cyclotomic& b, CycOp op);

// Numerical embedding, as a named operation mirroring cyc_arith.
std::complex<double> cyc_embed(const Cyclotomic& a);

}  // namespace fn

#endif
