#include "fn/qshuffle.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fn {

namespace {

// Sum of walk scalars over all (a,b)-shuffles, with an optional single mark.
// mark_pos = 0 means no mark; otherwise the walk starts with the mark at that
// local position and the results are keyed by its final position.
std::map<long, Cyclotomic> shuffle_sums(long a, long b, long mark_pos, const TwistParams& tw) {
    UnitScalars units = tw.letter_scalars();
    std::map<long, Cyclotomic> out;
    for (const auto& gamma : enumerate_shuffles(a, b)) {
        std::set<long> marks;
        if (mark_pos > 0) marks.insert(mark_pos);
        auto res = walk_word(lift(gamma), a + b, marks, units);
        long key = mark_pos > 0 ? *res.marks.begin() : 0;
        auto it = out.find(key);
        if (it == out.end())
            out.emplace(key, res.scalar);
        else
            it->second += res.scalar;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

Cyclotomic power(const Cyclotomic& base, long e) {
    Cyclotomic b = e >= 0 ? base : base.inverse();
    long k = e >= 0 ? e : -e;
    Cyclotomic acc = Cyclotomic::from_rational(base.order(), Rational(1));
    for (long i = 0; i < k; ++i) acc *= b;
    return acc;
}

Cyclotomic eval_poly(const IntPoly& p, const Cyclotomic& x) {
    Cyclotomic acc(x.order());
    for (long k = p.degree(); k >= 0; --k)
        acc = acc * x + Cyclotomic::from_rational(x.order(), Rational(p.coeff(k)));
    return acc;
}

}  // namespace

Cyclotomic gamma_mul(long a, long b, const TwistParams& tw) {
    if (a < 0 || b < 0) throw std::domain_error("negative block size");
    auto sums = shuffle_sums(a, b, 0, tw);
    return sums.count(0) ? sums.at(0) : Cyclotomic(tw.order());
}

std::map<long, Cyclotomic> left_mul(long a, const ModuleBasisLabel& y, const TwistParams& tw) {
    if (a < 0 || y.height < 1 || y.height > y.size)
        throw std::domain_error("malformed left module product");
    // The marked block is the right factor: the mark sits at local position
    // a + height among the a + size strands.
    return shuffle_sums(a, y.size, a + y.height, tw);
}

std::map<long, Cyclotomic> right_mul(const ModuleBasisLabel& y, long a, const TwistParams& tw) {
    if (a < 0 || y.height < 1 || y.height > y.size)
        throw std::domain_error("malformed right module product");
    return shuffle_sums(y.size, a, y.height, tw);
}

std::map<long, Cyclotomic> right_mul_closed(long n, long a, const TwistParams& tw) {
    if (n < 1 || a < 0) throw std::domain_error("malformed closed-form product");
    Cyclotomic neg_q = -tw.q;
    Cyclotomic neg_s = -tw.s;
    std::map<long, Cyclotomic> out;
    for (long h = 0; h <= a; ++h) {
        Cyclotomic c = power(neg_s, -a) * power(neg_q, -(a - h) * (n - 1 + h)) *
                       eval_poly(gaussian_binomial(n - 1 + h, h), neg_q);
        for (long j = 0; j < h; ++j) c *= tw.p - power(neg_q, -(n - 1 + j));
        if (!c.is_zero()) out.emplace(h, std::move(c));
    }
    return out;
}

long FBasisElement::weight() const {
    long w = 0;
    for (const auto& blk : blocks)
        w += std::holds_alternative<GammaElement>(blk) ? std::get<GammaElement>(blk).size
                                                       : std::get<ModuleBasisLabel>(blk).size;
    return w;
}

long FBasisElement::mark_count() const {
    long c = 0;
    for (const auto& blk : blocks) c += std::holds_alternative<ModuleBasisLabel>(blk) ? 1 : 0;
    return c;
}

void FBasisElement::validate() const {
    for (const auto& blk : blocks) {
        if (std::holds_alternative<GammaElement>(blk)) {
            if (std::get<GammaElement>(blk).size < 1)
                throw std::invalid_argument("plain block of non-positive size");
        } else {
            const auto& y = std::get<ModuleBasisLabel>(blk);
            if (y.size < 1 || y.height < 1 || y.height > y.size)
                throw std::invalid_argument("marked block with height outside its size");
        }
    }
}

std::string FBasisElement::to_string() const {
    std::ostringstream out;
    for (size_t i = 0; i < blocks.size(); ++i) {
        if (i) out << ".";
        if (std::holds_alternative<GammaElement>(blocks[i]))
            out << "x" << std::get<GammaElement>(blocks[i]).size;
        else
            out << "y" << std::get<ModuleBasisLabel>(blocks[i]).height << ","
                << std::get<ModuleBasisLabel>(blocks[i]).size;
    }
    return out.str();
}

FBasisElement f_from_cell(const Cell& c) {
    FBasisElement e;
    size_t next_mark = 0;
    for (size_t i = 0; i < c.lambda.size(); ++i) {
        bool marked = next_mark < c.fixed_cols.size() &&
                      c.fixed_cols[next_mark] == static_cast<long>(i) + 1;
        if (marked) {
            e.blocks.emplace_back(ModuleBasisLabel{c.below[next_mark] + 1, c.lambda[i]});
            ++next_mark;
        } else {
            e.blocks.emplace_back(GammaElement{c.lambda[i]});
        }
    }
    return e;
}

Cell f_to_cell(const FBasisElement& e) {
    Cell c;
    for (size_t i = 0; i < e.blocks.size(); ++i) {
        if (std::holds_alternative<GammaElement>(e.blocks[i])) {
            c.lambda.push_back(std::get<GammaElement>(e.blocks[i]).size);
        } else {
            const auto& y = std::get<ModuleBasisLabel>(e.blocks[i]);
            c.lambda.push_back(y.size);
            c.fixed_cols.push_back(static_cast<long>(i) + 1);
            c.below.push_back(y.height - 1);
        }
    }
    return c;
}

FComplex::FComplex(long n, long m) : n_(n), m_(m) {
    if (n < 1) throw std::domain_error("need at least one plain point");
    if (m < 1) throw std::domain_error("the block complex needs at least one marked block");

    for (const auto& sizes : compositions(n + m)) {
        long q = static_cast<long>(sizes.size());
        if (q < m) continue;
        for (const auto& marked_at : subsets(1, q, m)) {
            // Odometer over mark heights, lexicographic.
            std::vector<long> heights(static_cast<size_t>(m), 1);
            for (;;) {
                FBasisElement e;
                size_t next = 0;
                for (long i = 1; i <= q; ++i) {
                    bool is_marked = next < marked_at.size() && marked_at[next] == i;
                    if (is_marked) {
                        e.blocks.emplace_back(
                            ModuleBasisLabel{heights[next], sizes[static_cast<size_t>(i - 1)]});
                        ++next;
                    } else {
                        e.blocks.emplace_back(GammaElement{sizes[static_cast<size_t>(i - 1)]});
                    }
                }
                basis_[q].push_back(std::move(e));

                long k = m - 1;
                while (k >= 0 &&
                       heights[static_cast<size_t>(k)] ==
                           sizes[static_cast<size_t>(marked_at[static_cast<size_t>(k)] - 1)]) {
                    heights[static_cast<size_t>(k)] = 1;
                    --k;
                }
                if (k < 0) break;
                ++heights[static_cast<size_t>(k)];
            }
        }
    }
    for (const auto& [q, list] : basis_)
        for (size_t i = 0; i < list.size(); ++i) index_.emplace(list[i], static_cast<long>(i));
}

const std::vector<FBasisElement>& FComplex::basis(long q) const {
    static const std::vector<FBasisElement> empty;
    auto it = basis_.find(q);
    return it == basis_.end() ? empty : it->second;
}

long FComplex::index_of(const FBasisElement& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) throw std::out_of_range("element not in the complex: " + e.to_string());
    return it->second;
}

SparseMatrix<Cyclotomic> f_boundary(const FComplex& fc, long q, const TwistParams& tw) {
    const auto& sources = fc.basis(q);
    const auto& targets = fc.basis(q - 1);
    SparseMatrix<Cyclotomic> mat(static_cast<long>(targets.size()), static_cast<long>(sources.size()));

    // Memoized products, keyed by the merged pair.
    std::map<std::pair<long, long>, Cyclotomic> plain_cache;
    std::map<std::tuple<long, long, long, bool>, std::map<long, Cyclotomic>> marked_cache;

    auto plain_product = [&](long a, long b) -> const Cyclotomic& {
        auto it = plain_cache.find({a, b});
        if (it != plain_cache.end()) return it->second;
        return plain_cache.emplace(std::make_pair(a, b), gamma_mul(a, b, tw)).first->second;
    };
    auto marked_product = [&](long a, const ModuleBasisLabel& y,
                              bool plain_on_left) -> const std::map<long, Cyclotomic>& {
        auto key = std::make_tuple(a, y.height, y.size, plain_on_left);
        auto it = marked_cache.find(key);
        if (it != marked_cache.end()) return it->second;
        auto result = plain_on_left ? left_mul(a, y, tw) : right_mul(y, a, tw);
        return marked_cache.emplace(std::move(key), std::move(result)).first->second;
    };

    for (size_t sc = 0; sc < sources.size(); ++sc) {
        const FBasisElement& e = sources[sc];
        for (long i = 1; i < q; ++i) {
            const FBlock& lhs = e.blocks[static_cast<size_t>(i - 1)];
            const FBlock& rhs = e.blocks[static_cast<size_t>(i)];
            bool lmark = std::holds_alternative<ModuleBasisLabel>(lhs);
            bool rmark = std::holds_alternative<ModuleBasisLabel>(rhs);
            if (lmark && rmark) continue;  // y . y = 0

            Cyclotomic sign = Cyclotomic::from_rational(tw.order(), Rational(i % 2 == 1 ? 1 : -1));
            FBasisElement target;
            target.blocks.assign(e.blocks.begin(), e.blocks.begin() + (i - 1));
            auto push_rest = [&](FBlock merged) {
                target.blocks.push_back(std::move(merged));
                target.blocks.insert(target.blocks.end(), e.blocks.begin() + (i + 1), e.blocks.end());
            };

            if (!lmark && !rmark) {
                long a = std::get<GammaElement>(lhs).size, b = std::get<GammaElement>(rhs).size;
                const Cyclotomic& coeff = plain_product(a, b);
                if (coeff.is_zero()) continue;
                push_rest(GammaElement{a + b});
                mat.add(fc.index_of(target), static_cast<long>(sc), coeff * sign);
            } else {
                long a = std::get<GammaElement>(lmark ? rhs : lhs).size;
                ModuleBasisLabel y = std::get<ModuleBasisLabel>(lmark ? lhs : rhs);
                const auto& products = marked_product(a, y, !lmark);
                for (const auto& [height, coeff] : products) {
                    FBasisElement t = target;
                    t.blocks.push_back(ModuleBasisLabel{height, a + y.size});
                    t.blocks.insert(t.blocks.end(), e.blocks.begin() + (i + 1), e.blocks.end());
                    mat.add(fc.index_of(t), static_cast<long>(sc), coeff * sign);
                }
            }
        }
    }
    return mat;
}

std::map<long, long> f_homology_dims(const FComplex& fc, const TwistParams& tw) {
    std::map<long, long> ranks;
    for (long q = fc.deg_min(); q <= fc.deg_max() + 1; ++q)
        ranks[q] = rank(f_boundary(fc, q, tw));
    std::map<long, long> out;
    for (long q = fc.deg_min(); q <= fc.deg_max(); ++q)
        out[q] = fc.basis_count(q) - ranks[q] - ranks[q + 1];
    return out;
}

}  // namespace fn
