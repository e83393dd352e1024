// A minimal ordered sparse matrix: only nonzero entries are stored, keyed by
// (row, col).  The entry map is ordered so that iteration (and therefore the
// text serialization and every algorithm that walks entries) is deterministic.

#ifndef FN_SPARSE_MATRIX_HPP
#define FN_SPARSE_MATRIX_HPP

#include <map>
#include <stdexcept>
#include <utility>

namespace fn {

template <class T>
class SparseMatrix {
public:
    using Index = std::pair<long, long>;
    using EntryMap = std::map<Index, T>;

    SparseMatrix(long rows, long cols) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0) throw std::domain_error("negative matrix dimension");
    }

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    long nnz() const { return static_cast<long>(entries_.size()); }
    const EntryMap& entries() const { return entries_; }

    void set(long r, long c, T v) {
        check_index(r, c);
        if (is_zero_value(v))
            entries_.erase({r, c});
        else
            entries_.insert_or_assign({r, c}, std::move(v));
    }

    void add(long r, long c, const T& v) {
        check_index(r, c);
        auto it = entries_.find({r, c});
        if (it == entries_.end()) {
            if (!is_zero_value(v)) entries_.emplace(Index{r, c}, v);
            return;
        }
        it->second += v;
        if (is_zero_value(it->second)) entries_.erase(it);
    }

    // Returns nullptr for a structural (or exact) zero.
    const T* get(long r, long c) const {
        check_index(r, c);
        auto it = entries_.find({r, c});
        return it == entries_.end() ? nullptr : &it->second;
    }

    bool is_zero() const { return entries_.empty(); }

    SparseMatrix<T> transpose() const {
        SparseMatrix<T> t(cols_, rows_);
        for (const auto& [idx, v] : entries_) t.entries_.emplace(Index{idx.second, idx.first}, v);
        return t;
    }

    SparseMatrix<T> multiply(const SparseMatrix<T>& rhs) const {
        if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product dimension mismatch");
        SparseMatrix<T> out(rows_, rhs.cols_);
        // Group the right factor by row for the walk over left entries.
        std::map<long, std::map<long, const T*>> rhs_rows;
        for (const auto& [idx, v] : rhs.entries_) rhs_rows[idx.first][idx.second] = &v;
        for (const auto& [idx, v] : entries_) {
            auto it = rhs_rows.find(idx.second);
            if (it == rhs_rows.end()) continue;
            for (const auto& [c, pv] : it->second) out.add(idx.first, c, v * (*pv));
        }
        return out;
    }

private:
    long rows_, cols_;
    EntryMap entries_;

    void check_index(long r, long c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw std::out_of_range("matrix index out of range");
    }
};

}  // namespace fn

#endif
