#include "fn/exact_linalg.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace fn {

namespace {

Rational value_inverse(const Rational& x) {
    if (x == 0) throw std::domain_error("inverse of zero rational");
    return Rational(1) / x;
}

Cyclotomic value_inverse(const Cyclotomic& x) { return x.inverse(); }

// Sparse elimination over a field.  Rows live in hash maps; col_rows[c] is the
// set of active rows with a nonzero in column c, kept in sync incrementally.
template <class T>
long field_rank(const SparseMatrix<T>& m) {
    std::vector<std::unordered_map<long, T>> rows(static_cast<size_t>(m.rows()));
    std::vector<std::set<long>> col_rows(static_cast<size_t>(m.cols()));
    for (const auto& [idx, v] : m.entries()) {
        rows[static_cast<size_t>(idx.first)].emplace(idx.second, v);
        col_rows[static_cast<size_t>(idx.second)].insert(idx.first);
    }

    long rank = 0;
    for (;;) {
        // Cheapest active column.
        long pivot_col = -1;
        size_t best = 0;
        for (long c = 0; c < m.cols(); ++c) {
            size_t sz = col_rows[static_cast<size_t>(c)].size();
            if (sz == 0) continue;
            if (pivot_col < 0 || sz < best) {
                pivot_col = c;
                best = sz;
            }
        }
        if (pivot_col < 0) break;

        // Smallest row within it.
        long pivot_row = -1;
        size_t best_row = 0;
        for (long r : col_rows[static_cast<size_t>(pivot_col)]) {
            size_t sz = rows[static_cast<size_t>(r)].size();
            if (pivot_row < 0 || sz < best_row) {
                pivot_row = r;
                best_row = sz;
            }
        }
        ++rank;

        auto& prow = rows[static_cast<size_t>(pivot_row)];
        T inv = value_inverse(prow.at(pivot_col));
        for (auto& [c, v] : prow) v *= inv;

        const std::set<long> victims = col_rows[static_cast<size_t>(pivot_col)];
        for (long r : victims) {
            if (r == pivot_row) continue;
            auto& row = rows[static_cast<size_t>(r)];
            T factor = row.at(pivot_col);
            for (const auto& [c, v] : prow) {
                auto it = row.find(c);
                if (it == row.end()) {
                    T nv = factor * v;
                    nv = -nv;
                    if (!is_zero_value(nv)) {
                        row.emplace(c, std::move(nv));
                        col_rows[static_cast<size_t>(c)].insert(r);
                    }
                } else {
                    it->second -= factor * v;
                    if (is_zero_value(it->second)) {
                        row.erase(it);
                        col_rows[static_cast<size_t>(c)].erase(r);
                    }
                }
            }
        }

        // Retire the pivot row entirely.
        for (const auto& [c, v] : prow) col_rows[static_cast<size_t>(c)].erase(pivot_row);
        prow.clear();
    }
    return rank;
}

}  // namespace

long rank(const SparseMatrix<Rational>& m) { return field_rank(m); }

long rank(const SparseMatrix<Cyclotomic>& m) { return field_rank(m); }

long rank(const SparseMatrix<Integer>& m) {
    SparseMatrix<Rational> q(m.rows(), m.cols());
    for (const auto& [idx, v] : m.entries()) q.set(idx.first, idx.second, Rational(v));
    return field_rank(q);
}

std::vector<Integer> smith_normal_form(const SparseMatrix<Integer>& m) {
    const long R = m.rows();
    const long C = m.cols();
    std::vector<std::vector<Integer>> a(static_cast<size_t>(R), std::vector<Integer>(static_cast<size_t>(C), Integer(0)));
    for (const auto& [idx, v] : m.entries()) a[static_cast<size_t>(idx.first)][static_cast<size_t>(idx.second)] = v;

    auto row_sub = [&](long dst, long src, const Integer& q) {
        if (q == 0) return;
        for (long j = 0; j < C; ++j) a[static_cast<size_t>(dst)][static_cast<size_t>(j)] -= q * a[static_cast<size_t>(src)][static_cast<size_t>(j)];
    };
    auto col_sub = [&](long dst, long src, const Integer& q) {
        if (q == 0) return;
        for (long i = 0; i < R; ++i) a[static_cast<size_t>(i)][static_cast<size_t>(dst)] -= q * a[static_cast<size_t>(i)][static_cast<size_t>(src)];
    };

    std::vector<Integer> diag;
    long t = 0;
    while (t < std::min(R, C)) {
        // Smallest-magnitude nonzero entry of the trailing submatrix.
        long pi = -1, pj = -1;
        for (long i = t; i < R; ++i)
            for (long j = t; j < C; ++j) {
                const Integer& v = a[static_cast<size_t>(i)][static_cast<size_t>(j)];
                if (v == 0) continue;
                if (pi < 0 || mpz_cmpabs(v.get_mpz_t(), a[static_cast<size_t>(pi)][static_cast<size_t>(pj)].get_mpz_t()) < 0) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        std::swap(a[static_cast<size_t>(t)], a[static_cast<size_t>(pi)]);
        if (pj != t)
            for (long i = 0; i < R; ++i) std::swap(a[static_cast<size_t>(i)][static_cast<size_t>(t)], a[static_cast<size_t>(i)][static_cast<size_t>(pj)]);

        for (;;) {
            // Clear column t below the pivot; a nonzero remainder becomes the
            // new (smaller) pivot and the pass restarts.
            bool touched = true;
            while (touched) {
                touched = false;
                for (long i = t + 1; i < R; ++i) {
                    if (a[static_cast<size_t>(i)][static_cast<size_t>(t)] == 0) continue;
                    Integer q = a[static_cast<size_t>(i)][static_cast<size_t>(t)] / a[static_cast<size_t>(t)][static_cast<size_t>(t)];
                    row_sub(i, t, q);
                    if (a[static_cast<size_t>(i)][static_cast<size_t>(t)] != 0) {
                        std::swap(a[static_cast<size_t>(t)], a[static_cast<size_t>(i)]);
                        touched = true;
                    }
                }
                for (long j = t + 1; j < C; ++j) {
                    if (a[static_cast<size_t>(t)][static_cast<size_t>(j)] == 0) continue;
                    Integer q = a[static_cast<size_t>(t)][static_cast<size_t>(j)] / a[static_cast<size_t>(t)][static_cast<size_t>(t)];
                    col_sub(j, t, q);
                    if (a[static_cast<size_t>(t)][static_cast<size_t>(j)] != 0) {
                        for (long i = 0; i < R; ++i) std::swap(a[static_cast<size_t>(i)][static_cast<size_t>(t)], a[static_cast<size_t>(i)][static_cast<size_t>(j)]);
                        touched = true;
                    }
                }
            }
            // Divisibility repair: fold a violating row into row t and redo.
            const Integer& d = a[static_cast<size_t>(t)][static_cast<size_t>(t)];
            bool dirty = false;
            for (long i = t + 1; i < R && !dirty; ++i)
                for (long j = t + 1; j < C && !dirty; ++j)
                    if (a[static_cast<size_t>(i)][static_cast<size_t>(j)] % d != 0) {
                        for (long jj = 0; jj < C; ++jj)
                            a[static_cast<size_t>(t)][static_cast<size_t>(jj)] += a[static_cast<size_t>(i)][static_cast<size_t>(jj)];
                        dirty = true;
                    }
            if (!dirty) break;
        }

        if (a[static_cast<size_t>(t)][static_cast<size_t>(t)] < 0)
            for (long j = 0; j < C; ++j) a[static_cast<size_t>(t)][static_cast<size_t>(j)] = -a[static_cast<size_t>(t)][static_cast<size_t>(j)];
        diag.push_back(a[static_cast<size_t>(t)][static_cast<size_t>(t)]);
        ++t;
    }
    return diag;
}

Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return Integer(0);
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

}  // namespace fn
