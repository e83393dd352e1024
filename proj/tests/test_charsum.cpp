// Multiplicative characters and resultant character sums.
//
// Oracles: the (2,1) quadratic sum over F_3 is frozen at -6 by hand (each of
// the six square-free quadratics contributes -1) and recomputed here by an
// independent double loop over coefficient tuples with a textbook
// resultant-by-Euclid routine on raw residues.  Structural laws (vanishing at
// (1,1), degree swap, conjugation, trivial-map pair counting, the theorem
// bound) pin the rest.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "fn/charsum.hpp"
#include "fn/predict.hpp"

using namespace fn;

namespace {

// --- Independent textbook resultant on raw residue vectors -----------------

using LPoly = std::vector<long>;

void ltrim(LPoly& f) {
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

long lpow(long a, long e, long p) {
    long r = 1 % p;
    for (long i = 0; i < e; ++i)
        r = r * a % p;
    return r;
}

LPoly lmod(LPoly a, const LPoly& b, long p) {
    long db = static_cast<long>(b.size()) - 1;
    long inv = lpow(b.back(), p - 2, p);
    while (static_cast<long>(a.size()) - 1 >= db && !a.empty()) {
        long shift = static_cast<long>(a.size()) - 1 - db;
        long factor = a.back() * inv % p;
        for (long i = 0; i <= db; ++i) {
            size_t at = static_cast<size_t>(shift + i);
            a[at] = ((a[at] - factor * b[static_cast<size_t>(i)]) % p + p) % p;
        }
        ltrim(a);
    }
    return a;
}

// Res(f, g) by the Euclidean recursion
//   Res(f, g) = (-1)^{deg f deg g} lc(g)^{deg f - deg r} Res(g, r),  r = f mod g,
// with Res(f, c) = c^{deg f} for constants c.
long lres(LPoly f, LPoly g, long p) {
    ltrim(f);
    ltrim(g);
    long n = static_cast<long>(f.size()) - 1;
    long m = static_cast<long>(g.size()) - 1;
    if (m == 0)
        return lpow(g[0], n, p);
    if (n < m) {
        long swapped = lres(g, f, p);
        return (n * m) % 2 ? (p - swapped) % p : swapped;
    }
    LPoly r = lmod(f, g, p);
    if (r.empty())
        return 0;
    long dr = static_cast<long>(r.size()) - 1;
    long value = lpow(g.back(), n - dr, p) * lres(g, r, p) % p;
    return (n * m) % 2 ? (p - value) % p : value;
}

long lgcd_degree(LPoly a, LPoly b, long p) {
    ltrim(a);
    ltrim(b);
    while (!b.empty()) {
        LPoly r = lmod(a, b, p);
        ltrim(r);
        a = std::move(b);
        b = std::move(r);
    }
    return static_cast<long>(a.size()) - 1;
}

std::vector<long> divisors_between(long value, long lo, long hi) {
    std::vector<long> out;
    for (long d = lo; d <= hi; ++d)
        if (value % d == 0)
            out.push_back(d);
    return out;
}

Cyclotomic cyc_pow(const Cyclotomic& base, long e) {
    Cyclotomic r = Cyclotomic::from_integer(base.order(), 1);
    for (long i = 0; i < e; ++i)
        r = r * base;
    return r;
}

}  // namespace

TEST_CASE("primitive roots match the known tables") {
    CHECK(FqContext(3, 1).code_of(find_primitive_root(FqContext(3, 1))) == 2);
    CHECK(FqContext(5, 1).code_of(find_primitive_root(FqContext(5, 1))) == 2);
    CHECK(FqContext(7, 1).code_of(find_primitive_root(FqContext(7, 1))) == 3);
    // F_4 = F_2(t): t^3 = 1, so t (code 2) generates.  F_9 = F_3(t) with
    // t^2 = -1: t has order 4, and 1 + t (code 4) is the first generator.
    CHECK(FqContext(2, 2).code_of(find_primitive_root(FqContext(2, 2))) == 2);
    CHECK(FqContext(3, 2).code_of(find_primitive_root(FqContext(3, 2))) == 4);
}

TEST_CASE("characters are homomorphisms with an exact zero at zero") {
    for (long spec = 0; spec < 5; ++spec) {
        FqContext F = spec == 0   ? FqContext(3, 1)
                      : spec == 1 ? FqContext(2, 2)
                      : spec == 2 ? FqContext(5, 1)
                      : spec == 3 ? FqContext(7, 1)
                                  : FqContext(3, 2);
        long q = F.q();
        for (long d : divisors_between(q - 1, 2, q - 1)) {
            CAPTURE(q); CAPTURE(d);
            Character chi = make_character(F, d);
            CHECK(char_eval(F, chi, F.zero()).is_zero());
            bool nontrivial = false;
            for (long a = 1; a < q; ++a) {
                FqElement ea = F.element_of(a);
                Cyclotomic va = char_eval(F, chi, ea);
                CHECK(cyc_pow(va, d) == Cyclotomic::from_integer(d, 1));
                if (!(va == Cyclotomic::from_integer(d, 1)))
                    nontrivial = true;
                for (long b = 1; b < q; ++b) {
                    FqElement eb = F.element_of(b);
                    CHECK(char_eval(F, chi, F.mul(ea, eb)) == va * char_eval(F, chi, eb));
                }
            }
            CHECK(nontrivial);
            CHECK(char_eval(F, chi, chi.generator) == Cyclotomic::root_power(d, 1));
            // chi(g) * chi(g^{d-1}) = 1.
            FqElement gd1 = F.pow(chi.generator, Integer(d - 1));
            CHECK(char_eval(F, chi, chi.generator) * char_eval(F, chi, gd1) ==
                  Cyclotomic::from_integer(d, 1));
        }
    }

    FqContext F5(5, 1);
    Character quad = make_character(F5, 2);
    CHECK(char_eval(F5, quad, F5.from_residue(4)) == Cyclotomic::from_integer(2, 1));
    CHECK(char_eval(F5, quad, F5.from_residue(2)) == Cyclotomic::from_integer(2, -1));

    // A Galois twist relabels the root of unity.
    Character base = make_character(F5, 4, 1);
    Character twisted = make_character(F5, 4, 3);
    for (long a = 1; a < 5; ++a)
        CHECK(char_eval(F5, twisted, F5.element_of(a)) ==
              char_eval(F5, base, F5.element_of(a)).galois(3));

    CHECK_THROWS_AS(make_character(F5, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_character(F5, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_character(F5, 4, 2), std::invalid_argument);
}

TEST_CASE("the quadratic sum at (2,1) over F_3 matches the Euclid oracle") {
    // Independent path: raw residue tuples, textbook Euclid resultant, and
    // the quadratic character chi(1) = 1, chi(2) = -1 by hand.
    long oracle = 0;
    for (long c0 = 0; c0 < 3; ++c0)
        for (long c1 = 0; c1 < 3; ++c1) {
            LPoly f = {c0, c1, 1};
            LPoly fprime = {c1, 2};
            if (lgcd_degree(f, fprime, 3) != 0)
                continue;  // not square-free
            for (long b0 = 0; b0 < 3; ++b0) {
                long r = lres(f, {b0, 1}, 3);
                oracle += r == 0 ? 0 : (r == 1 ? 1 : -1);
            }
        }
    CHECK(oracle == -6);

    FqContext F3(3, 1);
    Character chi = make_character(F3, 2);
    CharSumResult sum = character_sum(F3, chi, 2, 1);
    CHECK(sum.value == Cyclotomic::from_integer(2, -6));
    CHECK(sum.magnitude == doctest::Approx(6.0));
    CHECK(sum.within_bound);
    CHECK(sum.q == 3);
    CHECK(sum.d == 2);

    // The underlying histogram, frozen by the same hand enumeration.
    std::vector<Integer> counts = resultant_value_counts(F3, 2, 1);
    REQUIRE(counts.size() == 3);
    CHECK(counts[0] == 6);
    CHECK(counts[1] == 3);
    CHECK(counts[2] == 9);
}

TEST_CASE("the sum over linear pairs vanishes for every nontrivial character") {
    for (long spec = 0; spec < 5; ++spec) {
        FqContext F = spec == 0   ? FqContext(3, 1)
                      : spec == 1 ? FqContext(2, 2)
                      : spec == 2 ? FqContext(5, 1)
                      : spec == 3 ? FqContext(7, 1)
                                  : FqContext(3, 2);
        long q = F.q();
        for (long d : divisors_between(q - 1, 2, q - 1)) {
            CAPTURE(q); CAPTURE(d);
            CharSumResult sum = character_sum(F, make_character(F, d), 1, 1);
            CHECK(sum.value.is_zero());
            CHECK(sum.within_bound);
        }
    }
}

TEST_CASE("swapping the degrees multiplies by chi(-1) to the nm") {
    for (long spec = 0; spec < 3; ++spec) {
        FqContext F = spec == 0 ? FqContext(3, 1) : spec == 1 ? FqContext(5, 1) : FqContext(2, 2);
        long q = F.q();
        for (long d : divisors_between(q - 1, 2, 6)) {
            Character chi = make_character(F, d);
            Cyclotomic chi_minus_one = char_eval(F, chi, F.neg(F.one()));
            for (long n = 1; n <= 2; ++n)
                for (long m = 1; m <= 2; ++m) {
                    CAPTURE(q); CAPTURE(d); CAPTURE(n); CAPTURE(m);
                    CharSumResult fwd = character_sum(F, chi, n, m);
                    CharSumResult rev = character_sum(F, chi, m, n);
                    CHECK(rev.value == cyc_pow(chi_minus_one, n * m) * fwd.value);
                }
        }
    }
}

TEST_CASE("conjugate characters produce conjugate sums") {
    for (long p : {3L, 5L, 7L}) {
        FqContext F(p, 1);
        for (long d : divisors_between(p - 1, 2, p - 1)) {
            Character chi = make_character(F, d);
            Character chi_bar = make_character(F, d, d - 1);
            for (long n = 1; n <= 2; ++n)
                for (long m = 1; m <= 2; ++m) {
                    CAPTURE(p); CAPTURE(d); CAPTURE(n); CAPTURE(m);
                    CHECK(character_sum(F, chi_bar, n, m).value ==
                          character_sum(F, chi, n, m).value.conj());
                }
        }
    }
}

TEST_CASE("the trivial map counts coprime square-free pairs") {
    for (long spec = 0; spec < 3; ++spec) {
        FqContext F = spec == 0 ? FqContext(3, 1) : spec == 1 ? FqContext(2, 2) : FqContext(5, 1);
        long q = F.q();
        for (auto [n, m] : {std::pair<long, long>{1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 2}}) {
            CAPTURE(q); CAPTURE(n); CAPTURE(m);
            std::vector<Integer> counts = resultant_value_counts(F, n, m);

            std::vector<FqPoly> fs = enumerate_monic_squarefree(F, n);
            std::vector<FqPoly> gs = enumerate_monic_squarefree(F, m);
            Integer coprime = 0;
            for (const FqPoly& f : fs)
                for (const FqPoly& g : gs)
                    if (poly_degree(F, poly_gcd(F, f, g)) == 0)
                        ++coprime;

            Integer trivial_sum = 0, total = 0;
            for (long c = 0; c < q; ++c) {
                total += counts[static_cast<size_t>(c)];
                if (c != 0)
                    trivial_sum += counts[static_cast<size_t>(c)];
            }
            CHECK(trivial_sum == coprime);
            CHECK(total == Integer(fs.size()) * Integer(gs.size()));
        }
    }
}

TEST_CASE("every computed instance stays within the theorem bound") {
    const long kPairLimit = 30000;
    for (long spec = 0; spec < 5; ++spec) {
        FqContext F = spec == 0   ? FqContext(3, 1)
                      : spec == 1 ? FqContext(2, 2)
                      : spec == 2 ? FqContext(5, 1)
                      : spec == 3 ? FqContext(7, 1)
                                  : FqContext(3, 2);
        long q = F.q();
        std::vector<long> ds = divisors_between(q - 1, 2, 6);
        if (ds.empty())
            continue;
        std::vector<Character> chis;
        for (long d : ds)
            chis.push_back(make_character(F, d));
        for (long n = 1; n <= 9; ++n)
            for (long m = 1; m <= 9; ++m) {
                double pairs = std::pow(static_cast<double>(q), static_cast<double>(n + m));
                if (pairs > static_cast<double>(kPairLimit))
                    continue;
                std::vector<Integer> counts = resultant_value_counts(F, n, m);
                for (const Character& chi : chis) {
                    CAPTURE(q); CAPTURE(chi.order); CAPTURE(n); CAPTURE(m);
                    CharSumResult sum = character_sum_from_counts(F, chi, n, m, counts);
                    CHECK(sum.magnitude <= sum.bound);
                    CHECK(sum.within_bound);
                }
            }
    }
}

TEST_CASE("threads and tabulation leave the histogram unchanged") {
    FqContext F5(5, 1), F3(3, 1);
    for (long spec = 0; spec < 2; ++spec) {
        const FqContext& F = spec == 0 ? F5 : F3;
        long n = spec == 0 ? 2 : 3;
        long m = spec == 0 ? 2 : 1;
        CharSumOptions plain;
        CharSumOptions threaded;
        threaded.threads = 4;
        CharSumOptions tabulated;
        tabulated.tabulate = true;
        std::vector<Integer> a = resultant_value_counts(F, n, m, plain);
        std::vector<Integer> b = resultant_value_counts(F, n, m, threaded);
        std::vector<Integer> c = resultant_value_counts(F, n, m, tabulated);
        CHECK(a == b);
        CHECK(a == c);
    }
}

TEST_CASE("fields beyond the lookup-table range fall back to exact arithmetic") {
    FqContext F67(67, 1);
    REQUIRE_FALSE(F67.has_code_tables());
    std::vector<Integer> counts = resultant_value_counts(F67, 1, 1);
    REQUIRE(counts.size() == 67);
    // res(x-a, x-b) = a-b: every value, zero included, occurs exactly q times.
    for (long c = 0; c < 67; ++c)
        CHECK(counts[static_cast<size_t>(c)] == 67);
    for (long d : {2L, 3L, 11L}) {
        CharSumResult sum = character_sum_from_counts(F67, make_character(F67, d), 1, 1, counts);
        CHECK(sum.value.is_zero());
    }
}

TEST_CASE("budget refusals carry the cost estimate") {
    FqContext F3(3, 1);
    Character chi = make_character(F3, 2);
    CharSumOptions small;
    small.budget = 100;
    CHECK_THROWS_AS(character_sum(F3, chi, 3, 3, small), BudgetError);
    try {
        resultant_value_counts(F3, 3, 3, small);
        FAIL("expected a budget refusal");
    } catch (const BudgetError& e) {
        CHECK(e.cost() == 729);
        CHECK(e.budget() == 100);
    }

    CHECK_THROWS_AS(resultant_value_counts(F3, 0, 1), std::domain_error);
    CHECK_THROWS_AS(resultant_value_counts(F3, 1, -1), std::domain_error);

    FqContext F5(5, 1);
    CharSumOptions big_table;
    big_table.tabulate = true;
    CHECK_THROWS_AS(resultant_value_counts(F5, 5, 4, big_table), std::invalid_argument);
}
