#include "fn/foxneuwirth.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fn {

long Cell::points() const { return std::accumulate(lambda.begin(), lambda.end(), 0L); }

long Cell::dimension() const {
    return points() + static_cast<long>(lambda.size()) - 2 * marks();
}

std::vector<long> Cell::marked_positions() const {
    std::vector<long> prefix(lambda.size() + 1, 0);
    for (size_t i = 0; i < lambda.size(); ++i) prefix[i + 1] = prefix[i] + lambda[i];
    std::vector<long> out;
    out.reserve(fixed_cols.size());
    for (size_t k = 0; k < fixed_cols.size(); ++k)
        out.push_back(below[k] + 1 + prefix[static_cast<size_t>(fixed_cols[k] - 1)]);
    return out;
}

void Cell::validate() const {
    for (long part : lambda)
        if (part < 1) throw std::invalid_argument("cell has a non-positive column");
    if (fixed_cols.size() != below.size())
        throw std::invalid_argument("cell has mismatched mark data");
    long prev = 0;
    for (size_t k = 0; k < fixed_cols.size(); ++k) {
        long col = fixed_cols[k];
        if (col <= prev || col > static_cast<long>(lambda.size()))
            throw std::invalid_argument("cell marks are not increasing column indices");
        if (below[k] < 0 || below[k] >= lambda[static_cast<size_t>(col - 1)])
            throw std::invalid_argument("cell mark height outside its column");
        prev = col;
    }
}

std::string Cell::to_string() const {
    auto join = [](const std::vector<long>& v) {
        std::ostringstream s;
        for (size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
        return s.str();
    };
    std::ostringstream out;
    out << "(" << join(lambda) << ")";
    if (!fixed_cols.empty()) out << " cols(" << join(fixed_cols) << ") below(" << join(below) << ")";
    return out.str();
}

ChainComplex::ChainComplex(long n, long m) : n_(n), m_(m) {
    if (n < 1) throw std::domain_error("need at least one unmarked point");
    if (m < 0) throw std::domain_error("negative number of marked points");

    for (const auto& lambda : compositions(n + m)) {
        long l = static_cast<long>(lambda.size());
        if (l < m) continue;
        for (const auto& fixed : subsets(1, l, m)) {
            // Odometer over below-counts, lexicographic.
            std::vector<long> radix(static_cast<size_t>(m));
            for (long k = 0; k < m; ++k) radix[static_cast<size_t>(k)] = lambda[static_cast<size_t>(fixed[static_cast<size_t>(k)] - 1)];
            std::vector<long> below(static_cast<size_t>(m), 0);
            for (;;) {
                Cell c{lambda, fixed, below};
                cells_[c.dimension()].push_back(c);
                long k = m - 1;
                while (k >= 0 && below[static_cast<size_t>(k)] + 1 == radix[static_cast<size_t>(k)]) {
                    below[static_cast<size_t>(k)] = 0;
                    --k;
                }
                if (k < 0) break;
                ++below[static_cast<size_t>(k)];
            }
        }
    }
    for (const auto& [d, list] : cells_)
        for (size_t i = 0; i < list.size(); ++i) index_.emplace(list[i], static_cast<long>(i));
}

const std::vector<Cell>& ChainComplex::cells(long d) const {
    static const std::vector<Cell> empty;
    auto it = cells_.find(d);
    return it == cells_.end() ? empty : it->second;
}

long ChainComplex::total_cells() const {
    long total = 0;
    for (const auto& [d, list] : cells_) total += static_cast<long>(list.size());
    return total;
}

long ChainComplex::index_of(const Cell& c) const {
    auto it = index_.find(c);
    if (it == index_.end()) throw std::out_of_range("cell not in the complex: " + c.to_string());
    return it->second;
}

Integer ChainComplex::euler_characteristic() const {
    Integer chi(0);
    for (const auto& [d, list] : cells_) {
        Integer count(static_cast<long>(list.size()));
        chi += (d % 2 == 0) ? count : -count;
    }
    return chi;
}

namespace {

// One merge of adjacent columns i, i+1 (1-based) of a source cell: everything
// the two boundary routes share.
struct Merge {
    long i = 0;          // merge position
    long p = 0, q = 0;   // sizes of the merged columns
    int sign = 1;        // (-1)^(i-1)
    long mark = -1;      // index k of the mark inside the merged pair, or -1
    bool mark_in_left = false;
    Cell target;         // J entry of the mark is filled per h by the caller
};

std::vector<Merge> merges_of(const Cell& c) {
    std::vector<Merge> out;
    long l = static_cast<long>(c.lambda.size());
    for (long i = 1; i < l; ++i) {
        long left_mark = -1, right_mark = -1;
        for (size_t k = 0; k < c.fixed_cols.size(); ++k) {
            if (c.fixed_cols[k] == i) left_mark = static_cast<long>(k);
            if (c.fixed_cols[k] == i + 1) right_mark = static_cast<long>(k);
        }
        if (left_mark >= 0 && right_mark >= 0) continue;  // marked columns never merge

        Merge mg;
        mg.i = i;
        mg.p = c.lambda[static_cast<size_t>(i - 1)];
        mg.q = c.lambda[static_cast<size_t>(i)];
        mg.sign = (i % 2 == 1) ? 1 : -1;
        mg.mark = left_mark >= 0 ? left_mark : right_mark;
        mg.mark_in_left = left_mark >= 0;
        mg.target.lambda = coarsen(c.lambda, i - 1);
        for (long col : c.fixed_cols) mg.target.fixed_cols.push_back(col <= i ? col : col - 1);
        mg.target.below = c.below;
        out.push_back(std::move(mg));
    }
    return out;
}

// Scalar tables for the twisted route, memoized per column-size pair (and per
// mark position within the pair).  A merged pair contains at most one mark.
class WalkTables {
public:
    explicit WalkTables(const TwistParams& tw) : units_(tw.letter_scalars()), order_(tw.order()) {}

    const Cyclotomic& unmarked(long p, long q) {
        auto it = plain_.find({p, q});
        if (it != plain_.end()) return it->second;
        Cyclotomic acc(order_);
        for (const auto& s : enumerate_shuffles(p, q))
            acc += walk_word(lift(s), p + q, {}, units_).scalar;
        return plain_.emplace(std::make_pair(p, q), std::move(acc)).first->second;
    }

    // marked(p, q, pos)[fp] = sum of walk scalars over shuffles moving the
    // mark from local position pos to local position fp+1.
    const std::vector<Cyclotomic>& marked(long p, long q, long pos) {
        auto key = std::make_tuple(p, q, pos);
        auto it = marked_.find(key);
        if (it != marked_.end()) return it->second;
        std::vector<Cyclotomic> acc(static_cast<size_t>(p + q), Cyclotomic(order_));
        for (const auto& s : enumerate_shuffles(p, q)) {
            auto res = walk_word(lift(s), p + q, {pos}, units_);
            acc[static_cast<size_t>(*res.marks.begin() - 1)] += res.scalar;
        }
        return marked_.emplace(std::move(key), std::move(acc)).first->second;
    }

private:
    UnitScalars units_;
    long order_;
    std::map<std::pair<long, long>, Cyclotomic> plain_;
    std::map<std::tuple<long, long, long>, std::vector<Cyclotomic>> marked_;
};

}  // namespace

SparseMatrix<Integer> boundary_untwisted(const ChainComplex& cx, long d) {
    const auto& sources = cx.cells(d);
    const auto& targets = cx.cells(d - 1);
    SparseMatrix<Integer> mat(static_cast<long>(targets.size()), static_cast<long>(sources.size()));

    for (size_t sc = 0; sc < sources.size(); ++sc) {
        const Cell& c = sources[sc];
        for (Merge mg : merges_of(c)) {
            if (mg.mark < 0) {
                Integer coeff = c_pq(mg.p, mg.q) * mg.sign;
                if (coeff != 0) mat.add(cx.index_of(mg.target), static_cast<long>(sc), coeff);
                continue;
            }
            MarkSide side = mg.mark_in_left ? MarkSide::left_block : MarkSide::right_block;
            long free_size = mg.mark_in_left ? mg.q : mg.p;
            long j = c.below[static_cast<size_t>(mg.mark)];
            for (long h = 0; h <= free_size; ++h) {
                Integer coeff = c_hj(mg.p, mg.q, h, j, side) * mg.sign;
                if (coeff == 0) continue;
                mg.target.below[static_cast<size_t>(mg.mark)] = j + h;
                mat.add(cx.index_of(mg.target), static_cast<long>(sc), coeff);
            }
        }
    }
    return mat;
}

SparseMatrix<Cyclotomic> boundary_twisted(const ChainComplex& cx, long d, const TwistParams& tw) {
    const auto& sources = cx.cells(d);
    const auto& targets = cx.cells(d - 1);
    SparseMatrix<Cyclotomic> mat(static_cast<long>(targets.size()), static_cast<long>(sources.size()));
    WalkTables tables(tw);

    for (size_t sc = 0; sc < sources.size(); ++sc) {
        const Cell& c = sources[sc];
        for (Merge mg : merges_of(c)) {
            Cyclotomic sign = Cyclotomic::from_rational(tw.order(), Rational(mg.sign));
            if (mg.mark < 0) {
                Cyclotomic coeff = tables.unmarked(mg.p, mg.q) * sign;
                if (!coeff.is_zero()) mat.add(cx.index_of(mg.target), static_cast<long>(sc), coeff);
                continue;
            }
            long j = c.below[static_cast<size_t>(mg.mark)];
            long pos = mg.mark_in_left ? j + 1 : mg.p + j + 1;
            const auto& table = tables.marked(mg.p, mg.q, pos);
            for (size_t fp = 0; fp < table.size(); ++fp) {
                if (table[fp].is_zero()) continue;
                // Final local position fp+1 means fp points of the merged
                // column now sit below the mark.
                mg.target.below[static_cast<size_t>(mg.mark)] = static_cast<long>(fp);
                mat.add(cx.index_of(mg.target), static_cast<long>(sc), table[fp] * sign);
            }
        }
    }
    return mat;
}

std::map<long, long> homology_dims(const ChainComplex& cx, const TwistParams& tw) {
    std::map<long, long> ranks;  // rank of the map leaving degree d
    for (long d = cx.dim_min(); d <= cx.dim_max() + 1; ++d)
        ranks[d] = rank(boundary_twisted(cx, d, tw));
    std::map<long, long> out;
    for (long j = cx.dim_min(); j <= cx.dim_max(); ++j)
        out[j] = cx.cell_count(j) - ranks[j] - ranks[j + 1];
    return out;
}

std::map<long, IntegralHomology> integral_homology(const ChainComplex& cx) {
    std::map<long, SparseMatrix<Integer>> bnd;
    for (long d = cx.dim_min(); d <= cx.dim_max() + 1; ++d)
        bnd.emplace(d, boundary_untwisted(cx, d));

    std::map<long, IntegralHomology> out;
    for (long j = cx.dim_min(); j <= cx.dim_max(); ++j) {
        IntegralHomology h;
        auto factors = smith_normal_form(bnd.at(j + 1));
        h.free_rank = cx.cell_count(j) - rank(bnd.at(j)) - static_cast<long>(factors.size());
        for (const auto& f : factors)
            if (f > 1) h.torsion.push_back(f);
        out[j] = std::move(h);
    }
    return out;
}

std::map<long, long> dualize_dims(const std::map<long, long>& comp_dims, long n) {
    std::map<long, long> out;
    for (const auto& [j, dim] : comp_dims) out[2 * n - j] = dim;
    return out;
}

std::map<long, IntegralHomology> dualize_integral(const std::map<long, IntegralHomology>& comp,
                                                  long n) {
    std::map<long, IntegralHomology> out;
    for (const auto& [j, h] : comp) {
        out[2 * n - j].free_rank = h.free_rank;
        // Torsion in degree j of the compactified complex shows up one degree
        // lower on the open side: j -> 2n - j - 1.
        if (!h.torsion.empty()) out[2 * n - j - 1].torsion = h.torsion;
    }
    return out;
}

}  // namespace fn
