// Compositions, shuffles, marked shuffle families, braid lifts, and the
// rank-1 scalar walk.
//
// Oracles: inversion counts are recomputed by brute force from the
// permutation; the signed shuffle counts are checked against the Gaussian
// binomial specialized at -1; the marked families are checked against a
// brute-force filter of all shuffles.  Walks are checked for multiplicativity
// (split anywhere) and for independence of the chosen reduced word.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "fn/exact_linalg.hpp"
#include "fn/intpoly.hpp"
#include "fn/shuffle.hpp"

using namespace fn;

namespace {

long brute_inversions(const std::vector<long>& targets) {
    long inv = 0;
    for (size_t a = 0; a < targets.size(); ++a)
        for (size_t b = a + 1; b < targets.size(); ++b)
            if (targets[a] > targets[b]) ++inv;
    return inv;
}

// Apply a braid word (left to right) to the identity arrangement and read off
// the permutation it realizes: source -> final position.
std::vector<long> word_to_targets(const std::vector<long>& word, long n) {
    std::vector<long> arrangement(static_cast<size_t>(n));
    std::iota(arrangement.begin(), arrangement.end(), 1);
    for (long a : word) std::swap(arrangement[static_cast<size_t>(a - 1)], arrangement[static_cast<size_t>(a)]);
    std::vector<long> targets(static_cast<size_t>(n));
    for (long pos = 1; pos <= n; ++pos) targets[static_cast<size_t>(arrangement[static_cast<size_t>(pos - 1)] - 1)] = pos;
    return targets;
}

UnitScalars units_from_roots(long order, long qe, long se, long pe) {
    auto q = Cyclotomic::root_power(order, qe);
    auto s = Cyclotomic::root_power(order, se);
    auto p = Cyclotomic::root_power(order, pe);
    return UnitScalars{q, s, p * s.inverse()};
}

std::vector<std::vector<long>> placements(const std::vector<Shuffle>& v) {
    std::vector<std::vector<long>> out;
    for (const auto& s : v) out.push_back(s.placement);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("compositions come out shortest-first then lexicographic") {
    auto c3 = compositions(3);
    std::vector<std::vector<long>> expected{{3}, {1, 2}, {2, 1}, {1, 1, 1}};
    CHECK(c3 == expected);

    auto c52 = compositions_with_length(5, 2);
    std::vector<std::vector<long>> expected52{{1, 4}, {2, 3}, {3, 2}, {4, 1}};
    CHECK(c52 == expected52);

    for (long n = 1; n <= 9; ++n) {
        CHECK(static_cast<long>(compositions(n).size()) == (1L << (n - 1)));
        for (long l = 1; l <= n; ++l)
            CHECK(Integer(static_cast<long>(compositions_with_length(n, l).size())) == binomial(n - 1, l - 1));
    }
    CHECK(compositions(0).empty());
}

TEST_CASE("coarsen merges one adjacent pair") {
    CHECK(coarsen({2, 3, 1}, 0) == std::vector<long>{5, 1});
    CHECK(coarsen({2, 3, 1}, 1) == std::vector<long>{2, 4});
    CHECK_THROWS_AS(coarsen({2, 3, 1}, 2), std::out_of_range);
    CHECK_THROWS_AS(coarsen({4}, 0), std::out_of_range);
}

TEST_CASE("shuffles enumerate to the right count and are block-monotone") {
    for (long p = 0; p <= 5; ++p)
        for (long q = 0; q <= 5; ++q) {
            auto all = enumerate_shuffles(p, q);
            CHECK(Integer(static_cast<long>(all.size())) == binomial(p + q, q));
            for (const auto& s : all) {
                auto t = s.targets();
                // A permutation of 1..p+q.
                auto sorted = t;
                std::sort(sorted.begin(), sorted.end());
                for (long k = 0; k < p + q; ++k) CHECK(sorted[static_cast<size_t>(k)] == k + 1);
                // Increasing on each block.
                for (long k = 1; k < p; ++k) CHECK(t[static_cast<size_t>(k - 1)] < t[static_cast<size_t>(k)]);
                for (long k = 1; k < q; ++k) CHECK(t[static_cast<size_t>(p + k - 1)] < t[static_cast<size_t>(p + k)]);
            }
        }
}

TEST_CASE("inversion formula matches the brute-force count") {
    for (long p = 0; p <= 4; ++p)
        for (long q = 0; q <= 3 && p + q <= 7; ++q)
            for (const auto& s : enumerate_shuffles(p, q)) {
                CAPTURE(p);
                CAPTURE(q);
                CHECK(s.inversions() == brute_inversions(s.targets()));
            }
}

TEST_CASE("signed shuffle counts equal the Gaussian binomial at -1") {
    for (long p = 0; p <= 10; ++p)
        for (long q = 0; p + q <= 10; ++q) {
            CAPTURE(p);
            CAPTURE(q);
            CHECK(c_pq(p, q) == c_pq_by_enumeration(p, q));
            CHECK(c_pq(p, q) == c_pq(q, p));
        }
    // Hand values: both blocks odd cancels; otherwise binom(floor((p+q)/2), floor(q/2)).
    CHECK(c_pq(1, 1) == 0);
    CHECK(c_pq(3, 3) == 0);
    CHECK(c_pq(2, 1) == 1);
    CHECK(c_pq(2, 2) == 2);
    CHECK(c_pq(4, 2) == 3);
}

TEST_CASE("marked shuffle families match the brute-force filter") {
    for (long p = 1; p <= 4; ++p)
        for (long q = 1; p + q <= 8 && q <= 4; ++q) {
            auto all = enumerate_shuffles(p, q);
            for (long j = 0; j < p; ++j)
                for (long h = 0; h <= q; ++h) {
                    std::vector<Shuffle> brute;
                    for (const auto& s : all)
                        if (s.targets()[static_cast<size_t>(j)] == j + h + 1) brute.push_back(s);
                    auto fast = enumerate_h_j_shuffles(p, q, h, j, MarkSide::left_block);
                    CAPTURE(p); CAPTURE(q); CAPTURE(h); CAPTURE(j);
                    CHECK(placements(fast) == placements(brute));
                    CHECK(Integer(static_cast<long>(fast.size())) ==
                          binomial(j + h, h) * binomial(p + q - j - h - 1, q - h));
                }
            for (long j = 0; j < q; ++j)
                for (long h = 0; h <= p; ++h) {
                    std::vector<Shuffle> brute;
                    for (const auto& s : all)
                        if (s.targets()[static_cast<size_t>(p + j)] == h + j + 1) brute.push_back(s);
                    auto fast = enumerate_h_j_shuffles(p, q, h, j, MarkSide::right_block);
                    CAPTURE(p); CAPTURE(q); CAPTURE(h); CAPTURE(j);
                    CHECK(placements(fast) == placements(brute));
                    CHECK(Integer(static_cast<long>(fast.size())) ==
                          binomial(h + j, j) * binomial(p + q - h - j - 1, q - j - 1));
                }
        }
}

TEST_CASE("marked families partition the full shuffle set over h") {
    for (long p = 1; p <= 3; ++p)
        for (long q = 1; q <= 3; ++q) {
            auto all = placements(enumerate_shuffles(p, q));
            for (long j = 0; j < p; ++j) {
                std::vector<Shuffle> merged;
                for (long h = 0; h <= q; ++h) {
                    auto part = enumerate_h_j_shuffles(p, q, h, j, MarkSide::left_block);
                    merged.insert(merged.end(), part.begin(), part.end());
                }
                CHECK(placements(merged) == all);
            }
            for (long j = 0; j < q; ++j) {
                std::vector<Shuffle> merged;
                for (long h = 0; h <= p; ++h) {
                    auto part = enumerate_h_j_shuffles(p, q, h, j, MarkSide::right_block);
                    merged.insert(merged.end(), part.begin(), part.end());
                }
                CHECK(placements(merged) == all);
            }
        }
}

TEST_CASE("signed marked counts on a hand-checked case") {
    // p = q = 1, mark in the right block (j = 0): h = 0 is the crossing
    // (one inversion), h = 1 is the identity.
    CHECK(c_hj(1, 1, 0, 0, MarkSide::right_block) == -1);
    CHECK(c_hj(1, 1, 1, 0, MarkSide::right_block) == 1);
    // Summing the marked counts over h recovers the unmarked count.
    for (long p = 1; p <= 4; ++p)
        for (long q = 1; q <= 4; ++q) {
            for (long j = 0; j < p; ++j) {
                Integer acc(0);
                for (long h = 0; h <= q; ++h) acc += c_hj(p, q, h, j, MarkSide::left_block);
                CHECK(acc == c_pq(p, q));
            }
            for (long j = 0; j < q; ++j) {
                Integer acc(0);
                for (long h = 0; h <= p; ++h) acc += c_hj(p, q, h, j, MarkSide::right_block);
                CHECK(acc == c_pq(p, q));
            }
        }
}

TEST_CASE("braid lifts are reduced words realizing the shuffle") {
    for (long p = 0; p <= 4; ++p)
        for (long q = 0; q <= 4; ++q)
            for (const auto& s : enumerate_shuffles(p, q)) {
                auto w = lift(s);
                CHECK(static_cast<long>(w.size()) == s.inversions());
                CHECK(word_to_targets(w, p + q) == s.targets());
                auto w2 = lift_alternative(s);
                CHECK(static_cast<long>(w2.size()) == s.inversions());
                CHECK(word_to_targets(w2, p + q) == s.targets());
            }
    // The identity shuffle lifts to the empty word.
    CHECK(lift(Shuffle{3, 2, {4, 5}}).empty());
}

TEST_CASE("scalar walks are independent of the chosen reduced word") {
    auto units = units_from_roots(12, 1, 2, 3);
    for (long p = 1; p <= 3; ++p)
        for (long q = 1; q <= 3; ++q)
            for (const auto& s : enumerate_shuffles(p, q)) {
                // One mark anywhere; marks confined to one block never cross
                // each other in a shuffle lift, so pairs inside a block are
                // fine too.
                for (long mark = 1; mark <= p + q; ++mark) {
                    auto a = walk_word(lift(s), p + q, {mark}, units);
                    auto b = walk_word(lift_alternative(s), p + q, {mark}, units);
                    CHECK(a.scalar == b.scalar);
                    CHECK(a.marks == b.marks);
                }
                if (p >= 2) {
                    auto a = walk_word(lift(s), p + q, {1, 2}, units);
                    auto b = walk_word(lift_alternative(s), p + q, {1, 2}, units);
                    CHECK(a.scalar == b.scalar);
                    CHECK(a.marks == b.marks);
                }
            }
}

TEST_CASE("walks track marks through the permutation") {
    auto units = units_from_roots(12, 1, 2, 3);
    for (long p = 1; p <= 3; ++p)
        for (long q = 1; q <= 3; ++q)
            for (const auto& s : enumerate_shuffles(p, q)) {
                auto t = s.targets();
                for (long src = 1; src <= p + q; ++src) {
                    auto r = walk_word(lift(s), p + q, {src}, units);
                    CHECK(r.marks == std::set<long>{t[static_cast<size_t>(src - 1)]});
                }
            }
}

TEST_CASE("walks multiply under word concatenation") {
    std::mt19937 rng(5150u);
    const long strands = 6;
    auto units = units_from_roots(12, 5, 7, 2);
    std::uniform_int_distribution<long> letter(1, strands - 1);
    std::uniform_int_distribution<long> len(0, 12);
    std::uniform_int_distribution<long> mark(1, strands);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<long> w(static_cast<size_t>(len(rng)));
        for (auto& a : w) a = letter(rng);
        std::set<long> marks{mark(rng)};
        std::uniform_int_distribution<long> cut(0, static_cast<long>(w.size()));
        long c = cut(rng);
        std::vector<long> w1(w.begin(), w.begin() + c), w2(w.begin() + c, w.end());

        auto whole = walk_word(w, strands, marks, units);
        auto first = walk_word(w1, strands, marks, units);
        auto second = walk_word(w2, strands, first.marks, units);
        CHECK(whole.scalar == first.scalar * second.scalar);
        CHECK(whole.marks == second.marks);
    }
}

TEST_CASE("negating all three unit scalars folds in the sign of the shuffle") {
    auto plus = units_from_roots(12, 1, 4, 6);
    UnitScalars minus{-plus.cross_unmarked, -plus.mark_left, -plus.mark_right};
    for (long p = 1; p <= 3; ++p)
        for (long q = 1; p + q <= 5; ++q)
            for (const auto& s : enumerate_shuffles(p, q))
                for (long mark = 1; mark <= p + q; ++mark) {
                    auto a = walk_word(lift(s), p + q, {mark}, plus);
                    auto b = walk_word(lift(s), p + q, {mark}, minus);
                    auto folded = Cyclotomic::from_rational(12, Rational(s.sign())) * a.scalar;
                    CHECK(b.scalar == folded);
                }
}

TEST_CASE("walks reject crossings of two marked strands and bad input") {
    auto units = units_from_roots(4, 1, 1, 1);
    CHECK_THROWS_AS(walk_word({1}, 3, {1, 2}, units), std::logic_error);
    CHECK_THROWS_AS(walk_word({3}, 3, {1}, units), std::out_of_range);
    CHECK_THROWS_AS(walk_word({}, 3, {4}, units), std::out_of_range);
    UnitScalars mixed{Cyclotomic::root_power(4, 1), Cyclotomic::root_power(8, 1),
                      Cyclotomic::root_power(4, 1)};
    CHECK_THROWS_AS(walk_word({1}, 3, {1}, mixed), std::invalid_argument);
}
