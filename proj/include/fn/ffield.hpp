// Finite fields F_q (q = p^k), polynomial arithmetic over them, square-free
// tests, and the resultant of two monic polynomials.
//
// Elements are coefficient vectors over F_p in the power basis of a monic
// irreducible modulus (the placeholder modulus x when k = 1).  The modulus is
// either supplied or found by lexicographic search, and is verified
// irreducible by trial division against every monic polynomial of degree at
// most k/2.
//
// The resultant of monic f (degree n) and g (degree m) is the determinant of
// the classical (n+m) x (n+m) Sylvester matrix: m rows carrying the
// coefficients of f from leading to constant, each shifted one column right
// of the previous, then n such rows for g.  For monic inputs this equals the
// product of root differences prod_{i,j} (x_i - y_j) taken over a splitting
// field, which resultant_oracle computes directly (tests only).
//
// Polynomial routines are templated over an arithmetic backend so the same
// logic runs on exact coefficient vectors (any q) and on packed integer codes
// with lookup tables (small q; the hot path for character-sum enumeration).

#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fn/rational.hpp"

namespace fn {

struct FqElement {
    std::vector<long> coeffs;  // residues in [0, p), length k
    bool operator==(const FqElement& o) const { return coeffs == o.coeffs; }
    bool operator!=(const FqElement& o) const { return !(*this == o); }
};

class FqContext {
public:
    // Searches for the lexicographically least monic irreducible modulus.
    FqContext(long p, long k);
    // Uses the supplied modulus (ascending coefficients, length k+1, monic);
    // throws std::invalid_argument if it is not monic irreducible.
    FqContext(long p, long k, std::vector<long> modulus);

    long characteristic() const { return p_; }
    long degree() const { return k_; }
    const Integer& cardinality() const { return q_; }
    // Cardinality as a machine integer; throws std::overflow_error if huge.
    long q() const;
    const std::vector<long>& modulus() const { return modulus_; }

    FqElement zero() const { return FqElement{std::vector<long>(static_cast<size_t>(k_), 0)}; }
    FqElement one() const { return from_residue(1); }
    FqElement from_residue(long v) const;

    bool is_zero(const FqElement& a) const;
    FqElement add(const FqElement& a, const FqElement& b) const;
    FqElement sub(const FqElement& a, const FqElement& b) const;
    FqElement neg(const FqElement& a) const;
    FqElement mul(const FqElement& a, const FqElement& b) const;
    FqElement inverse(const FqElement& a) const;  // throws std::domain_error on zero
    FqElement pow(const FqElement& a, const Integer& e) const;

    // Mixed-radix packing: code = sum coeffs[i] * p^i, in [0, q).
    long code_of(const FqElement& a) const;
    FqElement element_of(long code) const;

    // Packed-code arithmetic via lookup tables; available only when q <= 64
    // (enough for every character-sum field).  Throws std::logic_error
    // otherwise.
    bool has_code_tables() const { return !mul_table_.empty(); }
    long add_code(long a, long b) const { return add_table_[index(a, b)]; }
    long mul_code(long a, long b) const { return mul_table_[index(a, b)]; }
    long neg_code(long a) const { return neg_table_[static_cast<size_t>(a)]; }
    long sub_code(long a, long b) const { return add_code(a, neg_code(b)); }
    long inv_code(long a) const;  // throws std::domain_error on zero

    std::string element_to_string(const FqElement& a) const;

private:
    void init(std::vector<long> modulus, bool search);
    size_t index(long a, long b) const {
        return static_cast<size_t>(a) * static_cast<size_t>(q_long_) + static_cast<size_t>(b);
    }

    long p_ = 0;
    long k_ = 0;
    Integer q_;
    long q_long_ = 0;  // 0 when the cardinality does not fit a long
    std::vector<long> modulus_;                 // length k+1, monic
    std::vector<std::vector<long>> reduction_;  // x^{k+t} mod modulus, t = 0..k-2
    std::vector<long> add_table_, mul_table_, neg_table_, inv_table_;
};

struct FqPoly {
    std::vector<FqElement> coeffs;  // ascending degree, trailing zeros trimmed
    bool operator==(const FqPoly& o) const { return coeffs == o.coeffs; }
};

// Degree of the zero polynomial is -1.
long poly_degree(const FqContext& F, const FqPoly& f);
bool is_monic(const FqContext& F, const FqPoly& f);
FqPoly poly_from_residues(const FqContext& F, const std::vector<long>& ascending);
FqPoly poly_mul(const FqContext& F, const FqPoly& a, const FqPoly& b);
// Quotient and remainder; divisor must be nonzero.
std::pair<FqPoly, FqPoly> poly_divmod(const FqContext& F, const FqPoly& a, const FqPoly& b);
FqElement poly_eval(const FqContext& F, const FqPoly& f, const FqElement& x);
FqPoly formal_derivative(const FqContext& F, const FqPoly& f);

// Monic gcd via Euclid; throws std::invalid_argument when both are zero.
FqPoly poly_gcd(const FqContext& F, const FqPoly& f, const FqPoly& g);

// True iff gcd(f, f') = 1 with the derivative taken in characteristic p;
// f must be nonzero.
bool is_squarefree(const FqContext& F, const FqPoly& f);

// Sylvester determinant of two monic polynomials of positive degree; throws
// std::invalid_argument otherwise.  Zero iff the polynomials share a factor.
FqElement sylvester_resultant(const FqContext& F, const FqPoly& f, const FqPoly& g);

// Product of root differences prod_{i,j}(x_i - y_j) over a splitting field
// built by extending F by the lcm of the irreducible factor degrees, capped
// at total degree 24 over the prime field (throws std::domain_error beyond).
// Test oracle; caches splitting data per polynomial.
FqElement resultant_oracle(const FqContext& F, const FqPoly& f, const FqPoly& g);

// Every monic (square-free) polynomial of degree n exactly once, ordered
// lexicographically on the coefficient vector (c_0, ..., c_{n-1}) with
// element codes as letters; n >= 1.
std::vector<FqPoly> enumerate_monic(const FqContext& F, long n);
std::vector<FqPoly> enumerate_monic_squarefree(const FqContext& F, long n);

// --- Packed-code polynomial layer (hot path for pair enumeration) ---------
// A polynomial is a vector of element codes, ascending degree, trimmed.

using CodePoly = std::vector<long>;

CodePoly code_poly(const FqContext& F, const FqPoly& f);
FqPoly poly_from_codes(const FqContext& F, const CodePoly& f);
bool code_is_squarefree(const FqContext& F, const CodePoly& f);
// Sylvester determinant on codes; same preconditions as sylvester_resultant.
long code_resultant(const FqContext& F, const CodePoly& f, const CodePoly& g);
// Allocation-free variant for tight pair loops: scratch is resized as needed
// and may be reused across calls.
long code_resultant(const FqContext& F, const CodePoly& f, const CodePoly& g,
                    std::vector<long>& scratch);

}  // namespace fn
