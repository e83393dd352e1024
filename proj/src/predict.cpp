#include "fn/predict.hpp"

#include <cmath>
#include <stdexcept>

#include "fn/exact_linalg.hpp"

namespace fn {

namespace {

// binom(t, k) with the edge conventions of the closed sum: the k = -1 column
// is the indicator of t = -1, and any other out-of-range pair gives zero.
Integer binom_with_conventions(long t, long k) {
    if (k == -1)
        return Integer(t == -1 ? 1 : 0);
    if (k < 0 || t < k)
        return Integer(0);
    return binomial(t, k);
}

void check_bound_args(long q, long d) {
    if (q < 2)
        throw std::domain_error("bound requires q >= 2");
    if (d < 2)
        throw std::domain_error("bound requires d >= 2");
}

// Exponent of sqrt(q) in the bound: 2E with E = n+m+1-max/2 for quadratic
// characters and E = n+m+(1-max)/2 otherwise.
long twice_bound_exponent(long n, long m, long d) {
    long mx = std::max(n, m);
    return d == 2 ? 2 * (n + m + 1) - mx : 2 * (n + m) + 1 - mx;
}

}  // namespace

Integer composition_count_P(long n, long r, long m) {
    if (n < 0 || r < 1 || m < 1)
        throw std::domain_error("composition_count_P requires n >= 0, r >= 1, m >= 1");
    Integer total(0);
    for (long a = 1; r * a <= n; ++a)
        total += binom_with_conventions(n - r * a - 1, m - 2);
    return total;
}

Integer composition_count_P_by_enumeration(long n, long r, long m, LastPartRule rule) {
    if (n < 0 || r < 1 || m < 1)
        throw std::domain_error("composition_count_P requires n >= 0, r >= 1, m >= 1");
    long a_min = rule == LastPartRule::positive ? 1 : 0;

    // Count tuples (a_1, ..., a_{m-1}, a_m) with a_i >= 1, a_m >= a_min and
    // a_1 + ... + a_{m-1} + r*a_m = n by recursing on the free parts.
    Integer total(0);
    for (long a = a_min; r * a <= n; ++a) {
        long rest = n - r * a;
        if (m == 1) {
            total += Integer(rest == 0 ? 1 : 0);
            continue;
        }
        // Count (m-1)-part compositions of rest with positive parts.
        std::vector<long> parts(static_cast<size_t>(m - 1), 1);
        long assigned = m - 1;
        if (rest < assigned)
            continue;
        parts[0] += rest - assigned;
        while (true) {
            ++total;
            // Odometer: move one unit from the leftmost part that still has
            // surplus into the next slot, resetting everything before it.
            size_t i = 0;
            while (i + 1 < parts.size() && parts[i] == 1)
                ++i;
            if (i + 1 >= parts.size())
                break;
            long surplus = parts[i] - 1;
            parts[i] = 1;
            parts[i + 1] += 1;
            parts[0] += surplus - 1;
        }
    }
    return total;
}

PredictionReport punctured_dims_quadratic(long n, long m, long r) {
    if (r < 2)
        throw std::domain_error("quadratic prediction requires r >= 2");
    PredictionReport rep;
    rep.n = n;
    rep.m = m;
    rep.r = r;
    rep.vanishing_threshold = n - 2;
    Integer top = composition_count_P(n + m + r - 1, r, m);
    Integer sub = composition_count_P(n + m - 1, r, m);
    if (top > 0)
        rep.dims[n] = top;
    if (sub > 0)
        rep.dims[n - 1] = sub;
    return rep;
}

PredictionReport punctured_dims_generic(long n, long m) {
    if (m < 1)
        throw std::domain_error("generic prediction requires m >= 1");
    PredictionReport rep;
    rep.n = n;
    rep.m = m;
    rep.vanishing_threshold = n - 1;
    Integer top = binom_with_conventions(n + m - 2, m - 2);
    if (top > 0)
        rep.dims[n] = top;
    return rep;
}

long mixed_vanishing_threshold(long n, long m, long d) {
    if (d < 2)
        throw std::domain_error("mixed vanishing threshold requires d >= 2");
    long mx = std::max(n, m);
    return d == 2 ? mx - 2 : mx - 1;
}

double bound(long n, long m, long q, long d) {
    check_bound_args(q, d);
    double sq = std::sqrt(static_cast<double>(q));
    double power = std::pow(sq, static_cast<double>(twice_bound_exponent(n, m, d)));
    return std::ldexp(1.0, static_cast<int>(2 * n + 2 * m - 1)) * (power - 1.0) / (sq - 1.0);
}

double average_bound(long n, long m, long q, long d) {
    check_bound_args(q, d);
    double sq = std::sqrt(static_cast<double>(q));
    return std::ldexp(1.0, static_cast<int>(2 * n + 2 * m + 3)) *
           std::pow(sq, static_cast<double>(1 - std::max(n, m)));
}

bool within_bound(double magnitude, double bound_value) {
    constexpr double kRelativeSlack = 1e-9;
    return magnitude <= bound_value * (1.0 + kRelativeSlack) + kRelativeSlack;
}

std::optional<bool> within_bound_exact(const Cyclotomic& value, long n, long m,
                                       long q, long d) {
    check_bound_args(q, d);
    Integer root;
    mpz_sqrt(root.get_mpz_t(), Integer(q).get_mpz_t());
    if (root * root != q)
        return std::nullopt;  // sqrt(q) irrational: squared bound not rational

    Cyclotomic norm = value * value.conj();
    if (!norm.is_rational())
        return std::nullopt;

    // bound = 2^{2n+2m-1} (root^e - 1) / (root - 1) with e = twice the
    // half-integer exponent; both sides of |F|^2 <= bound^2 are rational.
    Integer power(1);
    long e = twice_bound_exponent(n, m, d);
    for (long i = 0; i < e; ++i)
        power *= root;
    Rational b = Rational(Integer(1) << (2 * n + 2 * m - 1)) *
                 make_rational(power - 1, root - 1);
    return norm.rational_value() <= b * b;
}

}  // namespace fn
