// Closed-form dimension predictions and character-sum bounds.
//
// Oracles: the composition count is compared against a brute-force composition
// enumerator over its whole tested domain (which pins the binomial edge
// conventions), the dimension predictions are compared against the cell-complex
// engine after dualizing, and the bound values are frozen by hand substitution.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fn/foxneuwirth.hpp"
#include "fn/predict.hpp"

using namespace fn;

TEST_CASE("closed composition sum equals brute-force enumeration everywhere") {
    for (long r = 1; r <= 4; ++r)
        for (long m = 1; m <= 4; ++m)
            for (long n = 0; n <= 14; ++n) {
                CAPTURE(n); CAPTURE(r); CAPTURE(m);
                CHECK(composition_count_P(n, r, m) ==
                      composition_count_P_by_enumeration(n, r, m));
            }
    CHECK_THROWS_AS(composition_count_P(-1, 2, 2), std::domain_error);
    CHECK_THROWS_AS(composition_count_P(3, 0, 2), std::domain_error);
    CHECK_THROWS_AS(composition_count_P(3, 2, 0), std::domain_error);
}

TEST_CASE("composition counts match frozen values") {
    // m = 2, r = 2: the count is the number of pairs (a, 2b) with a, b >= 1
    // summing to n, i.e. floor((n-1)/2).
    long frozen[] = {0, 0, 0, 1, 1, 2, 2, 3, 3};
    for (long n = 2; n <= 8; ++n)
        CHECK(composition_count_P(n, 2, 2) == frozen[n]);
    CHECK(composition_count_P(5, 2, 2) == 2);  // (3, 2) and (1, 4)
    CHECK(composition_count_P(0, 2, 2) == 0);
    CHECK(composition_count_P(0, 2, 3) == 0);
    // m = 1: only the single composition (r * a) can exist.
    for (long n = 0; n <= 12; ++n) {
        CHECK(composition_count_P(n, 3, 1) == ((n >= 3 && n % 3 == 0) ? 1 : 0));
        CHECK(composition_count_P(n, 1, 1) == (n >= 1 ? 1 : 0));
    }
}

TEST_CASE("the two last-part readings differ by a degree shift") {
    for (long r = 1; r <= 4; ++r)
        for (long m = 1; m <= 4; ++m)
            for (long n = 0; n <= 12; ++n) {
                CAPTURE(n); CAPTURE(r); CAPTURE(m);
                CHECK(composition_count_P_by_enumeration(n, r, m, LastPartRule::nonnegative) ==
                      composition_count_P_by_enumeration(n + r, r, m, LastPartRule::positive));
            }
}

TEST_CASE("prediction reports are internally consistent") {
    for (long n = 1; n <= 6; ++n)
        for (long m = 1; m <= 4; ++m) {
            for (long r = 2; r <= 4; ++r) {
                PredictionReport rep = punctured_dims_quadratic(n, m, r);
                CHECK(rep.vanishing_threshold == n - 2);
                for (const auto& [j, dim] : rep.dims) {
                    CHECK(dim > 0);
                    CHECK(j > rep.vanishing_threshold);
                    CHECK((j == n || j == n - 1));
                }
            }
            PredictionReport gen = punctured_dims_generic(n, m);
            CHECK(gen.vanishing_threshold == n - 1);
            for (const auto& [j, dim] : gen.dims) {
                CHECK(dim > 0);
                CHECK(j == n);
            }
        }
    CHECK(punctured_dims_quadratic(5, 3, 2).dim_at(5) == 12);
    CHECK(punctured_dims_quadratic(5, 3, 2).dim_at(4) == 6);
    CHECK(punctured_dims_generic(2, 3).dim_at(2) == 3);
    CHECK(punctured_dims_generic(4, 2).dim_at(4) == 1);
    CHECK(punctured_dims_generic(4, 1).dims.empty());
}

TEST_CASE("quadratic prediction matches the rank engine on small shapes") {
    // p = -q with -q a primitive r-th root: r = 2 uses (p, q) = (-1, 1),
    // r = 3 uses p = zeta_6^2, q = zeta_6^5.
    struct Case { long r; TwistParams tw; };
    std::vector<Case> cases = {
        {2, TwistParams::from_root_powers(2, 1, 0, 0)},
        {3, TwistParams::from_root_powers(6, 2, 5, 0)},
    };
    for (const auto& [r, tw] : cases)
        for (long n = 1; n <= 3; ++n)
            for (long m = 1; m <= 2; ++m) {
                ChainComplex cx(n, m);
                auto dual = dualize_dims(homology_dims(cx, tw), n);
                PredictionReport rep = punctured_dims_quadratic(n, m, r);
                CAPTURE(r); CAPTURE(n); CAPTURE(m);
                for (long j = 0; j <= 2 * n; ++j) {
                    auto it = dual.find(j);
                    long computed = it == dual.end() ? 0 : it->second;
                    CHECK(rep.dim_at(j) == computed);
                }
            }
}

TEST_CASE("generic prediction matches the rank engine on small shapes") {
    std::vector<TwistParams> generic = {
        TwistParams::from_root_powers(3, 1, 0, 0),  // p = zeta_3, q = 1
        TwistParams::from_root_powers(4, 1, 0, 0),  // p = zeta_4, q = 1
    };
    for (const auto& tw : generic)
        for (long n = 1; n <= 3; ++n)
            for (long m = 1; m <= 2; ++m) {
                ChainComplex cx(n, m);
                auto dual = dualize_dims(homology_dims(cx, tw), n);
                PredictionReport rep = punctured_dims_generic(n, m);
                CAPTURE(tw.order()); CAPTURE(n); CAPTURE(m);
                for (long j = 0; j <= 2 * n; ++j) {
                    auto it = dual.find(j);
                    long computed = it == dual.end() ? 0 : it->second;
                    CHECK(rep.dim_at(j) == computed);
                }
            }
}

TEST_CASE("mixed vanishing thresholds match the stated ranges") {
    CHECK(mixed_vanishing_threshold(3, 5, 2) == 3);
    CHECK(mixed_vanishing_threshold(3, 5, 3) == 4);
    CHECK(mixed_vanishing_threshold(5, 3, 2) == 3);
    CHECK(mixed_vanishing_threshold(1, 1, 2) == -1);
    CHECK(mixed_vanishing_threshold(1, 1, 5) == 0);
    CHECK_THROWS_AS(mixed_vanishing_threshold(2, 2, 1), std::domain_error);
}

TEST_CASE("character-sum bounds match hand substitution") {
    // n = m = 1, q = 9, d = 2: 2^3 (9^{5/2} - 1)/(3 - 1) = 8 * 242 / 2.
    CHECK(bound(1, 1, 9, 2) == doctest::Approx(968.0).epsilon(1e-12));
    // n = m = 1, q = 9, d = 3: exponent 2, so 8 * (81 - 1) / 2.
    CHECK(bound(1, 1, 9, 3) == doctest::Approx(320.0).epsilon(1e-12));
    CHECK(bound(1, 1, 9, 5) == doctest::Approx(320.0).epsilon(1e-12));
    CHECK(average_bound(1, 1, 7, 2) == doctest::Approx(128.0).epsilon(1e-12));
    CHECK(average_bound(1, 1, 9, 3) == doctest::Approx(128.0).epsilon(1e-12));
    CHECK_THROWS_AS(bound(1, 1, 1, 2), std::domain_error);
    CHECK_THROWS_AS(bound(1, 1, 9, 1), std::domain_error);
}

TEST_CASE("bounds are monotone where the derivation predicts") {
    for (long n = 1; n <= 3; ++n)
        for (long m = 1; m <= 3; ++m)
            for (long d : {2, 3}) {
                double prev = bound(n, m, 4, d);
                for (long q : {9, 16, 25}) {
                    double cur = bound(n, m, q, d);
                    CHECK(cur > prev);
                    prev = cur;
                }
            }
    // The average bound shrinks by 4/sqrt(q) per degree step, so it is
    // non-increasing in n >= m once q >= 16, and tends to zero for large q.
    for (long q : {16, 64, 256})
        for (long m = 1; m <= 2; ++m) {
            double prev = average_bound(m, m, q, 2);
            for (long n = m + 1; n <= 20; ++n) {
                double cur = average_bound(n, m, q, 2);
                CHECK(cur <= prev);
                prev = cur;
            }
        }
    double tail = average_bound(60, 1, 256, 2);
    CHECK(tail < 1e-20);
}

TEST_CASE("exact squared comparison agrees with the float path") {
    // q = 9 is a perfect square, so the squared bound is rational.
    auto int_value = [](long d, long v) { return Cyclotomic::from_integer(d, v); };

    CHECK(within_bound_exact(int_value(2, 968), 1, 1, 9, 2) == true);
    CHECK(within_bound_exact(int_value(2, -968), 1, 1, 9, 2) == true);
    CHECK(within_bound_exact(int_value(2, 969), 1, 1, 9, 2) == false);

    // Order 4: |a + bi|^2 = a^2 + b^2 is rational; bound(1,1,9,4) = 320.
    Cyclotomic i4 = Cyclotomic::root_power(4, 1);
    CHECK(within_bound_exact(int_value(4, 3) + int_value(4, 4) * i4, 1, 1, 9, 4) == true);
    CHECK(within_bound_exact(int_value(4, 320) * i4, 1, 1, 9, 4) == true);
    CHECK(within_bound_exact(int_value(4, 321) * i4, 1, 1, 9, 4) == false);

    // Not a perfect square: the exact path declines.
    CHECK(!within_bound_exact(int_value(2, 5), 1, 1, 7, 2).has_value());
    // Squared magnitude irrational (order 5): the exact path declines.
    Cyclotomic z5 = Cyclotomic::from_integer(5, 1) + Cyclotomic::root_power(5, 1);
    CHECK(!within_bound_exact(z5, 1, 1, 9, 5).has_value());

    // Wherever the exact path applies it agrees with the float verdict.
    for (long v = 960; v <= 975; ++v) {
        auto exact = within_bound_exact(int_value(2, v), 1, 1, 9, 2);
        REQUIRE(exact.has_value());
        CHECK(*exact == within_bound(std::abs(static_cast<double>(v)), bound(1, 1, 9, 2)));
    }
}
