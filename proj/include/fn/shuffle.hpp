// Compositions, riffle shuffles, and their braid lifts.
//
// A (p,q)-shuffle is a permutation of {1, ..., p+q} that is increasing on the
// first p values (the left block) and on the last q values (the right block).
// It is stored as its placement: the sorted list of target positions taken by
// the right block.  The number of inversions of such a permutation is
// sum_k (p + k - s_k) where s_1 < ... < s_q is the placement, because the k-th
// right element passes exactly the left elements that land above it.
//
// Two refinements carry a marked element whose trajectory is pinned:
//   * mark in the LEFT block  (sizes p fixed-left, q free-right): the shuffles
//     with gamma(j+1) = j+h+1, i.e. exactly h right elements land below the
//     mark; h ranges over [0, q] and j over [0, p).
//   * mark in the RIGHT block (sizes p free-left, q fixed-right): the shuffles
//     with gamma(p+j+1) = h+j+1, i.e. exactly h left elements land below the
//     mark; h ranges over [0, p] and j over [0, q).
// Both families are enumerated constructively by choosing the placement below
// and above the mark's target independently.
//
// lift() sends a shuffle to a positive braid word: the canonical reduced word
// produced by bubble-sorting the identity arrangement into the shuffle, one
// letter per inversion.  Any reduced word of the same permutation names the
// same positive braid, so consumers may not depend on which reduced word they
// get; a test drives an alternative generator through the same scalar walk.
//
// walk_word() evaluates a positive braid word on an arrangement of strands of
// which some are marked, multiplying one unit scalar per letter:
//   neither strand marked   -> cross_unmarked
//   right strand marked     -> mark_left   (the mark moves one step left)
//   left strand marked      -> mark_right  (the mark moves one step right)
// Two marked strands never cross in any word this library produces; the walk
// throws if they do.  The walk is multiplicative: splitting a word anywhere
// and chaining the final marks of the first half composes the two scalars.

#ifndef FN_SHUFFLE_HPP
#define FN_SHUFFLE_HPP

#include <set>
#include <vector>

#include "fn/cyclotomic.hpp"
#include "fn/rational.hpp"

namespace fn {

// All compositions of n (ordered sequences of positive parts), shortest
// first, lexicographic among equal lengths: for n = 3 the order is
// (3), (1,2), (2,1), (1,1,1).
std::vector<std::vector<long>> compositions(long n);
std::vector<std::vector<long>> compositions_with_length(long n, long parts);

// All k-element subsets of {lo, ..., hi} as increasing vectors, in
// lexicographic order.
std::vector<std::vector<long>> subsets(long lo, long hi, long k);

// Merge adjacent parts i and i+1 (0-based) of a composition.
std::vector<long> coarsen(const std::vector<long>& lambda, long i);

struct Shuffle {
    long p = 0;
    long q = 0;
    std::vector<long> placement;  // gamma(p+1) < ... < gamma(p+q), 1-based

    // targets()[k] = gamma(k+1): where source position k+1 (1-based) lands.
    std::vector<long> targets() const;
    long inversions() const;
    int sign() const { return inversions() % 2 == 0 ? 1 : -1; }
};

std::vector<Shuffle> enumerate_shuffles(long p, long q);

// Which block carries the marked element.
enum class MarkSide { left_block, right_block };

// The (h, j)-family described in the header comment.  Bounds: j in [0, p) and
// h in [0, q] for left_block; j in [0, q) and h in [0, p] for right_block.
std::vector<Shuffle> enumerate_h_j_shuffles(long p, long q, long h, long j, MarkSide side);

// Signed counts: c_pq = sum of sign over all (p,q)-shuffles, which equals the
// Gaussian binomial [p+q choose q]_t at t = -1 (the fast route used by the
// boundary maps); c_pq_by_enumeration walks the shuffles and is kept as the
// independent slow route.  c_hj sums sign over a marked family.
Integer c_pq(long p, long q);
Integer c_pq_by_enumeration(long p, long q);
Integer c_hj(long p, long q, long h, long j, MarkSide side);

// Canonical positive braid word of the shuffle: letters a mean "cross the
// strands at positions a, a+1" (1-based), applied left to right.
std::vector<long> lift(const Shuffle& s);

// Same braid, different reduced word (leftmost-descent generation); used only
// to test that scalar walks are word-independent.
std::vector<long> lift_alternative(const Shuffle& s);

struct UnitScalars {
    Cyclotomic cross_unmarked;  // both strands unmarked
    Cyclotomic mark_left;       // marked strand moves left
    Cyclotomic mark_right;      // marked strand moves right
};

struct WalkResult {
    Cyclotomic scalar;
    std::set<long> marks;  // positions of the marks after the walk
};

WalkResult walk_word(const std::vector<long>& word, long strands, const std::set<long>& marks,
                     const UnitScalars& units);

}  // namespace fn

#endif
