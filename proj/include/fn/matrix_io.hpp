// Text serialization for sparse matrices over Q(zeta_d).
//
// The format is line-based.  The first line is the header `rows cols order_d`;
// every following nonempty line is one stored entry
//
//     row col coeff_0 ... coeff_{phi(d)-1}
//
// with 0-based indices and exactly phi(order_d) rational coefficients, the
// coordinates of the entry on the power basis of Q(zeta_{order_d}).  Rationals
// are written as `num/den` (the reader also accepts a bare `num`).  Entries
// are written in (row, col) lexicographic order, so serialization is
// deterministic; readers reject duplicate positions, out-of-range indices,
// and malformed lines, reporting the offending line number.  Integer matrices
// use order 1, where the single coefficient is the integer itself.

#ifndef FN_MATRIX_IO_HPP
#define FN_MATRIX_IO_HPP

#include <iosfwd>
#include <string>

#include "fn/cyclotomic.hpp"
#include "fn/sparse_matrix.hpp"
#include "fn/twist.hpp"

namespace fn {

// Every entry must already live in Q(zeta_{order_d}); throws
// std::invalid_argument otherwise (and for order_d < 1).
void write_matrix(std::ostream& out, const SparseMatrix<Cyclotomic>& M, long order_d);
void write_matrix(std::ostream& out, const SparseMatrix<Integer>& M);

// Throw std::runtime_error on malformed input, naming the line.
SparseMatrix<Cyclotomic> read_matrix(std::istream& in);
// Requires order 1 and integral entries.
SparseMatrix<Integer> read_integer_matrix(std::istream& in);

// File variants; errors are std::runtime_error naming the path.
void write_matrix_file(const std::string& path, const SparseMatrix<Cyclotomic>& M, long order_d);
void write_matrix_file(const std::string& path, const SparseMatrix<Integer>& M);
SparseMatrix<Cyclotomic> read_matrix_file(const std::string& path);
SparseMatrix<Integer> read_integer_matrix_file(const std::string& path);

// Canonical file name for the boundary matrix of degree d of the complex on
// (n, m), e.g. "boundary_n2_m1_d3.mat" untwisted and
// "boundary_n2_m1_d3_o2_p1_q0_s0.mat" for parameters of root order o > 1
// with exponents (p, q, s).  Parameters that are roots of unity of the
// declared order are required (exponent recovery must succeed).
std::string matrix_filename(long n, long m, long d, const TwistParams& tw);

}  // namespace fn

#endif
