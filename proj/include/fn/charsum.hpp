// Multiplicative characters of F_q^x and brute-force resultant character sums.
//
// A character of order d (with d | q-1, d >= 2 so it is nontrivial) is pinned
// by a fixed primitive root g and the rule chi(g^k) = zeta_d^k; characters of
// the same order differ by a Galois twist zeta_d -> zeta_d^a with gcd(a,d)=1.
// By convention chi(0) = 0, so pairs of polynomials with a common root drop
// out of every sum.
//
// The sum ranges over monic square-free pairs (f, g) of degrees (n, m) and
// adds chi(resultant(f, g)).  Since chi factors through the resultant value,
// the enumeration first counts how often each field element occurs as a
// resultant (one machine word per element) and only then pays for cyclotomic
// arithmetic; the pair space is partitioned across worker threads into
// disjoint outer ranges whose histograms add, so the exact value is
// independent of the thread count.

#pragma once

#include <stdexcept>
#include <vector>

#include "fn/cyclotomic.hpp"
#include "fn/ffield.hpp"
#include "fn/rational.hpp"

namespace fn {

// Least element (in code order) of multiplicative order q-1, by exhaustive
// order test; requires the cardinality to fit a machine word.
FqElement find_primitive_root(const FqContext& F);

struct Character {
    long q = 0;      // field cardinality
    long order = 0;  // d >= 2, d | q-1
    long twist = 1;  // a with gcd(a, d) = 1: chi(g) = zeta_d^a
    FqElement generator;
    std::vector<long> log_table;  // code -> discrete log; -1 at the zero code
};

// Throws std::invalid_argument unless d >= 2, d | q-1, and gcd(twist, d) = 1.
Character make_character(const FqContext& F, long order, long twist = 1);

// zeta_d^{twist * log x} for x != 0; exact zero for x = 0.
Cyclotomic char_eval(const FqContext& F, const Character& chi, const FqElement& x);

struct CharSumResult {
    long n = 0, m = 0;
    long q = 0, d = 0;
    Cyclotomic value;
    double magnitude = 0.0;
    double bound = 0.0;
    bool within_bound = false;
};

// Refusal to enumerate a pair space larger than the configured budget.
class BudgetError : public std::runtime_error {
public:
    BudgetError(const Integer& cost, const Integer& budget);
    const Integer& cost() const { return cost_; }
    const Integer& budget() const { return budget_; }

private:
    Integer cost_, budget_;
};

struct CharSumOptions {
    Integer budget{100000000};  // maximum resultant evaluations (q^{n+m})
    int threads = 1;
    bool tabulate = false;  // precompute the per-pair resultant table first
                            // (memory-bounded: requires q^{n+m} <= 10^6)
};

// counts[c] = number of monic square-free pairs (f deg n, g deg m) whose
// resultant has element code c.  The workhorse every character sum reads
// from.  Throws BudgetError when q^{n+m} exceeds the budget.
std::vector<Integer> resultant_value_counts(const FqContext& F, long n, long m,
                                            const CharSumOptions& opts = {});

// Evaluate one character against a precomputed histogram (no enumeration).
CharSumResult character_sum_from_counts(const FqContext& F, const Character& chi, long n,
                                        long m, const std::vector<Integer>& counts);

// Exact sum of chi(resultant(f, g)) over monic square-free pairs, with the
// floating magnitude and the theorem bound attached.
CharSumResult character_sum(const FqContext& F, const Character& chi, long n, long m,
                            const CharSumOptions& opts = {});

}  // namespace fn
