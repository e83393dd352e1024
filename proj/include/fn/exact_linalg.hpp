// Exact linear algebra over Q, over cyclotomic fields, and over Z.
//
// rank() runs sparse Gaussian elimination with a cheapest-column pivot rule
// (pick the active column with fewest entries, then the row of smallest
// support inside it) so that the fill-in on the boundary matrices stays
// manageable.  smith_normal_form() is the classical dense reduction over Z
// with a divisibility-repair pass, returning the nonzero invariant factors
// d_1 | d_2 | ... ; torsion subgroups are read off as the factors > 1.

#ifndef FN_EXACT_LINALG_HPP
#define FN_EXACT_LINALG_HPP

#include <vector>

#include "fn/cyclotomic.hpp"
#include "fn/rational.hpp"
#include "fn/sparse_matrix.hpp"

namespace fn {

long rank(const SparseMatrix<Rational>& m);
long rank(const SparseMatrix<Cyclotomic>& m);
// Rank over Q of an integer matrix.
long rank(const SparseMatrix<Integer>& m);

// Nonzero invariant factors d_1 | d_2 | ... | d_r of an integer matrix
// (r = rank); the zero matrix yields an empty vector.
std::vector<Integer> smith_normal_form(const SparseMatrix<Integer>& m);

// binom(n, k), zero outside 0 <= k <= n.
Integer binomial(long n, long k);

}  // namespace fn

#endif
