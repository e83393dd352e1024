// The algebraic chain complex built from quantum shuffle products.
//
// One algebra and one bimodule over it, both graded by block size:
//   * Gamma: basis x_a (a >= 0), the divided-power algebra whose product is
//     x_a * x_b = C(a+b, b) x_{a+b} with C the Gaussian binomial at -q (the
//     signed sum over all (a,b)-shuffles of the local-system crossing
//     scalars);
//   * the bimodule with basis y_{i,b} (1 <= i <= b): a block of b points of
//     which the i-th from the bottom is marked.  x_a acting on the left (or
//     right) shuffles a plain points into the block, the walk scalar of each
//     shuffle times the basis element picked by the mark's final height.
//
// All products evaluate braid lifts with the negated letter scalars from
// twist.hpp, so the same local system feeds both this complex and the cell
// complex.  right_mul_closed is an independent closed formula for
// y_{n,n} * x_a, expressed back in the generators x_{a-h} * y_{n+h,n+h};
// a test expands it and compares with the walk route.
//
// The chain complex F has, in degree q, all sequences of q blocks with m
// marked blocks and n+m points in total; the differential merges adjacent
// blocks with sign (-1)^(i-1), sending marked-marked pairs to zero.  Its
// basis is enumerated in the same canonical order as the cell complex's
// cells (sizes shortest-first/lex, marked positions lex, heights lex), and
// f_from_cell / f_to_cell realize the dictionary: block sizes = column
// sizes, marked block positions = marked columns, height = below-count + 1.
// Degree q here corresponds to cell dimension q + n - m there.

#ifndef FN_QSHUFFLE_HPP
#define FN_QSHUFFLE_HPP

#include <map>
#include <variant>
#include <vector>

#include "fn/foxneuwirth.hpp"
#include "fn/sparse_matrix.hpp"
#include "fn/twist.hpp"

namespace fn {

struct GammaElement {
    long size = 0;  // x_size
    auto operator<=>(const GammaElement&) const = default;
};

struct ModuleBasisLabel {
    long height = 1;  // i: the mark is the height-th point from the bottom
    long size = 1;    // b: points in the block
    auto operator<=>(const ModuleBasisLabel&) const = default;
};

// x_a * x_b = gamma_mul(a, b) * x_{a+b}
Cyclotomic gamma_mul(long a, long b, const TwistParams& tw);

// x_a * y_{i,b} = sum_f left_mul(...)[f] * y_{f, a+b}
std::map<long, Cyclotomic> left_mul(long a, const ModuleBasisLabel& y, const TwistParams& tw);

// y_{i,b} * x_a = sum_f right_mul(...)[f] * y_{f, b+a}
std::map<long, Cyclotomic> right_mul(const ModuleBasisLabel& y, long a, const TwistParams& tw);

// Closed form: y_{n,n} * x_a = sum_h right_mul_closed(...)[h] * (x_{a-h} * y_{n+h,n+h})
std::map<long, Cyclotomic> right_mul_closed(long n, long a, const TwistParams& tw);

using FBlock = std::variant<GammaElement, ModuleBasisLabel>;

struct FBasisElement {
    std::vector<FBlock> blocks;

    long degree() const { return static_cast<long>(blocks.size()); }
    long weight() const;      // total points
    long mark_count() const;  // marked blocks
    void validate() const;
    std::string to_string() const;

    bool operator==(const FBasisElement& o) const { return blocks == o.blocks; }
    bool operator<(const FBasisElement& o) const { return blocks < o.blocks; }
};

FBasisElement f_from_cell(const Cell& c);
Cell f_to_cell(const FBasisElement& e);

class FComplex {
public:
    FComplex(long n, long m);  // n >= 1, m >= 1

    long n() const { return n_; }
    long m() const { return m_; }
    long deg_min() const { return m_; }
    long deg_max() const { return n_ + m_; }

    const std::vector<FBasisElement>& basis(long q) const;  // empty outside range
    long basis_count(long q) const { return static_cast<long>(basis(q).size()); }
    long index_of(const FBasisElement& e) const;

private:
    long n_, m_;
    std::map<long, std::vector<FBasisElement>> basis_;
    std::map<FBasisElement, long> index_;
};

inline FComplex f_complex(long n, long m) { return FComplex(n, m); }

// Differential from degree q to q-1; rows indexed by the target basis.
SparseMatrix<Cyclotomic> f_boundary(const FComplex& fc, long q, const TwistParams& tw);

// Homology dimensions keyed by F-degree q (cell dimension q + n - m).
std::map<long, long> f_homology_dims(const FComplex& fc, const TwistParams& tw);

}  // namespace fn

#endif
