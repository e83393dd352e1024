#include "fn/shuffle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "fn/exact_linalg.hpp"
#include "fn/intpoly.hpp"

namespace fn {

namespace {

void compositions_rec(long remaining, long parts, std::vector<long>& cur,
                      std::vector<std::vector<long>>& out) {
    if (parts == 1) {
        cur.push_back(remaining);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (long first = 1; first <= remaining - parts + 1; ++first) {
        cur.push_back(first);
        compositions_rec(remaining - first, parts - 1, cur, out);
        cur.pop_back();
    }
}

// All k-element subsets of {lo, ..., hi}, lexicographically.
void subsets_rec(long lo, long hi, long k, std::vector<long>& cur,
                 const std::function<void(const std::vector<long>&)>& emit) {
    if (k == 0) {
        emit(cur);
        return;
    }
    for (long v = lo; v <= hi - k + 1; ++v) {
        cur.push_back(v);
        subsets_rec(v + 1, hi, k - 1, cur, emit);
        cur.pop_back();
    }
}

void for_each_subset(long lo, long hi, long k,
                     const std::function<void(const std::vector<long>&)>& emit) {
    if (k < 0 || k > std::max(0L, hi - lo + 1)) return;
    std::vector<long> cur;
    subsets_rec(lo, hi, k, cur, emit);
}

}  // namespace

std::vector<std::vector<long>> subsets(long lo, long hi, long k) {
    std::vector<std::vector<long>> out;
    for_each_subset(lo, hi, k, [&](const std::vector<long>& s) { out.push_back(s); });
    return out;
}

std::vector<std::vector<long>> compositions_with_length(long n, long parts) {
    std::vector<std::vector<long>> out;
    if (n < 1 || parts < 1 || parts > n) return out;
    std::vector<long> cur;
    compositions_rec(n, parts, cur, out);
    return out;
}

std::vector<std::vector<long>> compositions(long n) {
    if (n < 0) throw std::domain_error("compositions of a negative integer");
    std::vector<std::vector<long>> out;
    for (long parts = 1; parts <= n; ++parts) {
        auto block = compositions_with_length(n, parts);
        out.insert(out.end(), block.begin(), block.end());
    }
    return out;
}

std::vector<long> coarsen(const std::vector<long>& lambda, long i) {
    if (i < 0 || i + 1 >= static_cast<long>(lambda.size()))
        throw std::out_of_range("coarsen index out of range");
    std::vector<long> out;
    out.reserve(lambda.size() - 1);
    for (long k = 0; k < static_cast<long>(lambda.size()); ++k) {
        if (k == i) {
            out.push_back(lambda[static_cast<size_t>(k)] + lambda[static_cast<size_t>(k + 1)]);
            ++k;
        } else {
            out.push_back(lambda[static_cast<size_t>(k)]);
        }
    }
    return out;
}

std::vector<long> Shuffle::targets() const {
    std::vector<bool> taken(static_cast<size_t>(p + q + 1), false);
    for (long s : placement) taken[static_cast<size_t>(s)] = true;
    std::vector<long> out(static_cast<size_t>(p + q), 0);
    long next_left = 0;
    for (long pos = 1; pos <= p + q; ++pos)
        if (!taken[static_cast<size_t>(pos)]) out[static_cast<size_t>(next_left++)] = pos;
    for (long k = 0; k < q; ++k) out[static_cast<size_t>(p + k)] = placement[static_cast<size_t>(k)];
    return out;
}

long Shuffle::inversions() const {
    long inv = 0;
    for (long k = 0; k < q; ++k) inv += p + (k + 1) - placement[static_cast<size_t>(k)];
    return inv;
}

std::vector<Shuffle> enumerate_shuffles(long p, long q) {
    if (p < 0 || q < 0) throw std::domain_error("negative shuffle block size");
    std::vector<Shuffle> out;
    for_each_subset(1, p + q, q, [&](const std::vector<long>& s) { out.push_back(Shuffle{p, q, s}); });
    return out;
}

std::vector<Shuffle> enumerate_h_j_shuffles(long p, long q, long h, long j, MarkSide side) {
    std::vector<Shuffle> out;
    if (side == MarkSide::left_block) {
        // Mark is source j+1, pinned to land at j+h+1: h right elements below
        // the mark, q-h above, and the mark's target itself is a left slot.
        if (j < 0 || j >= p) throw std::domain_error("mark offset outside the left block");
        if (h < 0 || h > q) throw std::domain_error("marked-shuffle count outside [0, q]");
        for_each_subset(1, j + h, h, [&](const std::vector<long>& below) {
            for_each_subset(j + h + 2, p + q, q - h, [&](const std::vector<long>& above) {
                std::vector<long> placement = below;
                placement.insert(placement.end(), above.begin(), above.end());
                out.push_back(Shuffle{p, q, placement});
            });
        });
    } else {
        // Mark is source p+j+1, pinned to land at h+j+1: h left elements below
        // the mark; the mark's target is itself part of the placement.
        if (j < 0 || j >= q) throw std::domain_error("mark offset outside the right block");
        if (h < 0 || h > p) throw std::domain_error("marked-shuffle count outside [0, p]");
        for_each_subset(1, h + j, j, [&](const std::vector<long>& below) {
            for_each_subset(h + j + 2, p + q, q - j - 1, [&](const std::vector<long>& above) {
                std::vector<long> placement = below;
                placement.push_back(h + j + 1);
                placement.insert(placement.end(), above.begin(), above.end());
                out.push_back(Shuffle{p, q, placement});
            });
        });
    }
    return out;
}

Integer c_pq(long p, long q) { return gaussian_binomial(p + q, q).eval(Integer(-1)); }

Integer c_pq_by_enumeration(long p, long q) {
    Integer acc(0);
    for (const auto& s : enumerate_shuffles(p, q)) acc += s.sign();
    return acc;
}

Integer c_hj(long p, long q, long h, long j, MarkSide side) {
    Integer acc(0);
    for (const auto& s : enumerate_h_j_shuffles(p, q, h, j, side)) acc += s.sign();
    return acc;
}

namespace {

std::vector<long> lift_by_sweeps(const std::vector<long>& target, bool restart_at_front) {
    const long n = static_cast<long>(target.size());
    std::vector<long> arrangement(static_cast<size_t>(n));
    std::iota(arrangement.begin(), arrangement.end(), 1);
    auto key = [&](long pos) { return target[static_cast<size_t>(arrangement[static_cast<size_t>(pos)] - 1)]; };

    std::vector<long> word;
    for (;;) {
        bool swapped = false;
        for (long pos = 0; pos + 1 < n; ++pos) {
            if (key(pos) > key(pos + 1)) {
                std::swap(arrangement[static_cast<size_t>(pos)], arrangement[static_cast<size_t>(pos + 1)]);
                word.push_back(pos + 1);
                swapped = true;
                if (restart_at_front) break;
            }
        }
        if (!swapped) break;
    }
    return word;
}

}  // namespace

std::vector<long> lift(const Shuffle& s) { return lift_by_sweeps(s.targets(), false); }

std::vector<long> lift_alternative(const Shuffle& s) { return lift_by_sweeps(s.targets(), true); }

WalkResult walk_word(const std::vector<long>& word, long strands, const std::set<long>& marks,
                     const UnitScalars& units) {
    if (units.cross_unmarked.order() != units.mark_left.order() ||
        units.cross_unmarked.order() != units.mark_right.order())
        throw std::invalid_argument("walk units must share one cyclotomic order");
    for (long m : marks)
        if (m < 1 || m > strands) throw std::out_of_range("mark outside the strand range");

    WalkResult res{Cyclotomic::from_rational(units.cross_unmarked.order(), Rational(1)), marks};
    for (long a : word) {
        if (a < 1 || a >= strands) throw std::out_of_range("braid letter outside the strand range");
        bool left = res.marks.count(a) > 0;
        bool right = res.marks.count(a + 1) > 0;
        if (left && right) throw std::logic_error("two marked strands cross in a scalar walk");
        if (!left && !right) {
            res.scalar *= units.cross_unmarked;
        } else if (right) {
            res.scalar *= units.mark_left;
            res.marks.erase(a + 1);
            res.marks.insert(a);
        } else {
            res.scalar *= units.mark_right;
            res.marks.erase(a);
            res.marks.insert(a + 1);
        }
    }
    return res;
}

}  // namespace fn
