// Closed-form predictions for the twisted homology of multi-punctured-plane
// configuration spaces, plus the character-sum bounds they imply.
//
// The composition count P(n) is the number of compositions
// (a_1, ..., a_{m-1}, r*a_m) of n with every part positive.  It evaluates to
//     P(n) = sum_{a=1}^{floor(n/r)} binom(n - r*a - 1, m - 2),
// where binom(t, -1) := [t == -1] (the m = 1 degeneration) and binomials with
// t < k >= 0 vanish.  Both the closed sum and a brute-force enumeration are
// exposed so every edge convention is pinned by counting, not transcription.
//
// Dimension predictions, for local systems on Conf_n of the m-punctured
// plane with braiding parameters (p, q):
//   * p = -q a primitive r-th root of unity (r >= 2):
//         dim H_n = P(n+m+r-1), dim H_{n-1} = P(n+m-1), zero elsewhere;
//     in particular H_j = 0 for j <= n-2.
//   * p not a power of -q:
//         dim H_n = binom(n+m-2, m-2), zero elsewhere.
//
// For the bicolor space Conf_{n,m} with a winding-number local system of
// order d, homology vanishes for j <= max(n,m)-2 when d = 2 and for
// j <= max(n,m)-1 when d > 2.  Feeding those vanishing ranges into the trace
// formula bounds the resultant character sum F_chi(n,m,q) by
//     2^{2n+2m-1} (q^E - 1) / (sqrt(q) - 1),
// with E = n+m+1-max(n,m)/2 for quadratic characters and
// E = n+m+(1-max(n,m))/2 otherwise; the average over all pairs is bounded by
// 2^{2n+2m+3} q^{(1-max(n,m))/2}.

#pragma once

#include <map>
#include <optional>

#include "fn/cyclotomic.hpp"
#include "fn/rational.hpp"

namespace fn {

// Whether the scaled final part r*a_m of the enumerated compositions must be
// positive (the definition used by the closed sum) or may be zero (the
// reading that appears before the degree shift; the two are related by
// P_positive(n + r) = P_nonnegative(n)).
enum class LastPartRule { positive, nonnegative };

// The closed sum for P(n) with the binomial edge conventions above.
// Requires n >= 0, r >= 1, m >= 1.
Integer composition_count_P(long n, long r, long m);

// Brute-force count of compositions (a_1, ..., a_{m-1}, r*a_m) of n; the
// oracle that decides every edge convention of the closed sum.
Integer composition_count_P_by_enumeration(long n, long r, long m,
                                           LastPartRule rule = LastPartRule::positive);

struct PredictionReport {
    long n = 0;
    long m = 0;
    long r = 0;  // root-of-unity order behind a dimension prediction (0 if n/a)
    long d = 0;  // character order behind a vanishing threshold / bound (0 if n/a)
    std::map<long, Integer> dims;    // degree -> predicted dimension; omitted = 0
    long vanishing_threshold = -1;   // predicted dims are zero in all degrees <= this
    double bound_value = 0.0;        // character-sum bound (0 if n/a)

    Integer dim_at(long j) const {
        auto it = dims.find(j);
        return it == dims.end() ? Integer(0) : it->second;
    }
};

// Dimensions when p = -q is a primitive r-th root of unity (r >= 2).
PredictionReport punctured_dims_quadratic(long n, long m, long r);

// Dimensions when p is not a power of -q.  Requires m >= 1; the m = 1 column
// degenerates to zero via the binom(., -1) convention, which tests pin
// against a direct rank computation.
PredictionReport punctured_dims_generic(long n, long m);

// Largest degree j such that H_j(Conf_{n,m}) is predicted to vanish for all
// degrees <= j under an order-d winding local system; may be negative, in
// which case no vanishing is asserted.  Requires d >= 2.
long mixed_vanishing_threshold(long n, long m, long d);

// The character-sum bound; requires q >= 2, d >= 2.
double bound(long n, long m, long q, long d);

// Bound on the average of the character over all pairs; requires q >= 2,
// d >= 2 (the value does not depend on d).
double average_bound(long n, long m, long q, long d);

// Float comparison |F| <= bound with pinned slack.
bool within_bound(double magnitude, double bound_value);

// Exact comparison of |value|^2 against bound(n, m, q, d)^2 in rational
// arithmetic.  Applicable only when sqrt(q) is an integer (so the squared
// bound is rational) and value * conj(value) is rational (always true for
// characters of order d with phi(d) <= 2); returns nullopt otherwise.
std::optional<bool> within_bound_exact(const Cyclotomic& value, long n, long m,
                                       long q, long d);

}  // namespace fn
