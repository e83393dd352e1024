// The cell complex of planar configurations with marked columns.
//
// A cell is a triple (lambda, fixed_cols, below):
//   * lambda: a composition of n + m -- the column sizes of a configuration
//     of n + m points read left to right, points in one column stacked
//     vertically;
//   * fixed_cols: which m columns (1-based, strictly increasing) contain a
//     marked point each;
//   * below[k]: how many points of its column sit strictly below the k-th
//     marked point, so 0 <= below[k] < lambda[fixed_cols[k] - 1].
// Its dimension is n + len(lambda) - m, where n is the number of unmarked
// points: each column contributes its size to the dimension except that a
// marked point is pinned, and one global degree counts the column structure.
// The marked points occupy the global positions (left to right, bottom to
// top) ik = below[k] + 1 + lambda_1 + ... + lambda_{fixed_cols[k]-1}.
//
// The boundary merges adjacent columns i, i+1 in all ways that shuffle the
// two stacks into one, with sign (-1)^(i-1); two marked columns never merge.
// Each shuffle contributes the scalar of its lifted braid word walked with
// the local-system letter scalars (see twist.hpp), acting on the strands of
// the two columns at their global offset; the final position of the marked
// strand (if any) dictates the below-count of the target cell.  With all
// parameters 1 the scalars collapse to signed counts of shuffles, giving the
// integral (untwisted) complex; the two routes are implemented independently
// (signed counts vs. scalar walks) and tested to coincide at parameter 1.
//
// Cells are enumerated per dimension in a canonical order: compositions
// shortest-first then lexicographic, then fixed column sets lexicographic,
// then below-counts lexicographic.  All matrices index rows/columns by this
// order.  Matrices map degree d to degree d-1 with rows indexed by targets.

#ifndef FN_FOXNEUWIRTH_HPP
#define FN_FOXNEUWIRTH_HPP

#include <map>
#include <string>
#include <vector>

#include "fn/exact_linalg.hpp"
#include "fn/sparse_matrix.hpp"
#include "fn/twist.hpp"

namespace fn {

struct Cell {
    std::vector<long> lambda;
    std::vector<long> fixed_cols;  // 1-based indices into lambda, increasing
    std::vector<long> below;       // same length as fixed_cols

    long marks() const { return static_cast<long>(fixed_cols.size()); }
    long points() const;     // n + m
    long dimension() const;  // n + len(lambda) - marks
    // Global 1-based positions of the marked points, strictly increasing.
    std::vector<long> marked_positions() const;
    // Structural sanity; throws std::invalid_argument on a malformed cell.
    void validate() const;

    std::string to_string() const;

    auto tie() const { return std::tie(lambda, fixed_cols, below); }
    bool operator==(const Cell& o) const { return tie() == o.tie(); }
    bool operator<(const Cell& o) const { return tie() < o.tie(); }
};

class ChainComplex {
public:
    // All cells for n unmarked and m marked points (n >= 1, m >= 0).
    ChainComplex(long n, long m);

    long n() const { return n_; }
    long m() const { return m_; }
    long dim_min() const { return m_ >= 1 ? n_ : n_ + 1; }
    long dim_max() const { return 2 * n_; }

    const std::vector<Cell>& cells(long d) const;  // empty outside the range
    long cell_count(long d) const { return static_cast<long>(cells(d).size()); }
    long total_cells() const;
    // Index of a cell within its dimension; throws if absent.
    long index_of(const Cell& c) const;

    // Alternating sum of cell counts.
    Integer euler_characteristic() const;

private:
    long n_, m_;
    std::map<long, std::vector<Cell>> cells_;
    std::map<Cell, long> index_;
};

// Boundary matrices from degree d to degree d-1.  The untwisted map is the
// integral differential (signed shuffle counts); the twisted map walks braid
// lifts with the letter scalars of the given parameters.
SparseMatrix<Integer> boundary_untwisted(const ChainComplex& cx, long d);
SparseMatrix<Cyclotomic> boundary_twisted(const ChainComplex& cx, long d, const TwistParams& tw);

// Homology dimensions over the fraction field Q(zeta): degree j maps to
// dim C_j - rank d_j - rank d_{j+1}.  Zero dimensions are kept so callers see
// the full supported range.
std::map<long, long> homology_dims(const ChainComplex& cx, const TwistParams& tw);

struct IntegralHomology {
    long free_rank = 0;
    std::vector<Integer> torsion;  // invariant factors > 1, ascending divisibility
    bool operator==(const IntegralHomology& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
};

// Integral homology of the complex itself (untwisted coefficients).
std::map<long, IntegralHomology> integral_homology(const ChainComplex& cx);

// The cells above compute the homology of a compactified space; the open
// configuration space is read off by duality.  Over a field:
//   dim H_j(open) = dim H_{2n-j}(compactified).
// Integrally the torsion shifts one degree:
//   rank H_j(open) = rank H_{2n-j},  torsion H_j(open) = torsion H_{2n-j-1}.
std::map<long, long> dualize_dims(const std::map<long, long>& comp_dims, long n);
std::map<long, IntegralHomology> dualize_integral(const std::map<long, IntegralHomology>& comp,
                                                  long n);

}  // namespace fn

#endif
