#include "fn/charsum.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <thread>

#include "fn/predict.hpp"

namespace fn {

FqElement find_primitive_root(const FqContext& F) {
    long q = F.q();
    for (long code = 1; code < q; ++code) {
        FqElement g = F.element_of(code);
        FqElement x = g;
        long order = 1;
        while (x != F.one()) {
            x = F.mul(x, g);
            ++order;
        }
        if (order == q - 1)
            return g;
    }
    throw std::logic_error("no primitive root found");
}

Character make_character(const FqContext& F, long order, long twist) {
    long q = F.q();
    if (order < 2)
        throw std::invalid_argument("character order must be at least 2");
    if ((q - 1) % order != 0)
        throw std::invalid_argument("character order must divide q-1");
    twist = ((twist % order) + order) % order;
    if (std::gcd(twist, order) != 1)
        throw std::invalid_argument("character twist must be coprime to the order");

    Character chi;
    chi.q = q;
    chi.order = order;
    chi.twist = twist;
    chi.generator = find_primitive_root(F);
    chi.log_table.assign(static_cast<size_t>(q), -1);
    FqElement x = F.one();
    for (long k = 0; k < q - 1; ++k) {
        chi.log_table[static_cast<size_t>(F.code_of(x))] = k;
        x = F.mul(x, chi.generator);
    }
    return chi;
}

Cyclotomic char_eval(const FqContext& F, const Character& chi, const FqElement& x) {
    if (static_cast<long>(chi.log_table.size()) != F.q())
        throw std::invalid_argument("character belongs to a different field");
    if (F.is_zero(x))
        return Cyclotomic::from_integer(chi.order, 0);
    long log = chi.log_table[static_cast<size_t>(F.code_of(x))];
    return Cyclotomic::root_power(chi.order, (log % chi.order) * chi.twist % chi.order);
}

BudgetError::BudgetError(const Integer& cost, const Integer& budget)
    : std::runtime_error("character sum needs " + cost.get_str() +
                         " resultant evaluations, over the budget of " + budget.get_str()),
      cost_(cost),
      budget_(budget) {}

namespace {

constexpr long kTabulateLimit = 1000000;  // pair-table precomputation cap

// Decode a packed coefficient tuple into a monic code polynomial of the given
// degree: digits c_0..c_{deg-1} base q, then the leading 1.
void unpack_monic(long packed, long q, long deg, CodePoly& out) {
    out.resize(static_cast<size_t>(deg + 1));
    for (long i = 0; i < deg; ++i) {
        out[static_cast<size_t>(i)] = packed % q;
        packed /= q;
    }
    out.back() = 1;
}

struct PairSpace {
    long q = 0;
    long n = 0, m = 0;
    long f_total = 0, g_total = 0;  // q^n, q^m
    std::function<bool(const CodePoly&)> squarefree;
    std::function<long(const CodePoly&, const CodePoly&, std::vector<long>&)> resultant;
};

PairSpace make_pair_space(const FqContext& F, long n, long m) {
    PairSpace s;
    s.q = F.q();
    s.n = n;
    s.m = m;
    s.f_total = 1;
    for (long i = 0; i < n; ++i)
        s.f_total *= s.q;
    s.g_total = 1;
    for (long i = 0; i < m; ++i)
        s.g_total *= s.q;
    if (F.has_code_tables()) {
        s.squarefree = [&F](const CodePoly& f) { return code_is_squarefree(F, f); };
        s.resultant = [&F](const CodePoly& f, const CodePoly& g, std::vector<long>& scratch) {
            return code_resultant(F, f, g, scratch);
        };
    } else {
        s.squarefree = [&F](const CodePoly& f) { return is_squarefree(F, poly_from_codes(F, f)); };
        s.resultant = [&F](const CodePoly& f, const CodePoly& g, std::vector<long>&) {
            return F.code_of(sylvester_resultant(F, poly_from_codes(F, f), poly_from_codes(F, g)));
        };
    }
    return s;
}

// Outer loop over g, inner loop over f; each worker owns a disjoint range of
// the outer index space and its own histogram, merged by addition afterwards.
std::vector<long> count_by_enumeration(const PairSpace& s, int threads) {
    constexpr long kMaterializeLimit = 4000000;  // packed inner codes kept in memory
    std::vector<long> f_codes;
    bool materialized = s.f_total <= kMaterializeLimit;
    if (materialized) {
        CodePoly f;
        for (long packed = 0; packed < s.f_total; ++packed) {
            unpack_monic(packed, s.q, s.n, f);
            if (s.squarefree(f))
                f_codes.push_back(packed);
        }
    }

    long workers = std::clamp<long>(threads, 1, s.g_total);
    std::vector<std::vector<long>> partial(static_cast<size_t>(workers),
                                           std::vector<long>(static_cast<size_t>(s.q), 0));
    auto run = [&](long w) {
        std::vector<long>& counts = partial[static_cast<size_t>(w)];
        std::vector<long> scratch;
        CodePoly f, g;
        long chunk = (s.g_total + workers - 1) / workers;
        long lo = w * chunk, hi = std::min(s.g_total, lo + chunk);
        for (long gp = lo; gp < hi; ++gp) {
            unpack_monic(gp, s.q, s.m, g);
            if (!s.squarefree(g))
                continue;
            if (materialized) {
                for (long fp : f_codes) {
                    unpack_monic(fp, s.q, s.n, f);
                    ++counts[static_cast<size_t>(s.resultant(f, g, scratch))];
                }
            } else {
                for (long fp = 0; fp < s.f_total; ++fp) {
                    unpack_monic(fp, s.q, s.n, f);
                    if (s.squarefree(f))
                        ++counts[static_cast<size_t>(s.resultant(f, g, scratch))];
                }
            }
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (long w = 0; w < workers; ++w)
            pool.emplace_back(run, w);
        for (std::thread& t : pool)
            t.join();
    }

    std::vector<long> counts(static_cast<size_t>(s.q), 0);
    for (const std::vector<long>& part : partial)
        for (long c = 0; c < s.q; ++c)
            counts[static_cast<size_t>(c)] += part[static_cast<size_t>(c)];
    return counts;
}

// Precompute the resultant of every monic pair (square-free or not, the
// latter marked -1) indexed by packed pair code, then read the histogram off
// the table.  Bounded by kTabulateLimit entries.
std::vector<long> count_by_table(const PairSpace& s, int threads) {
    std::vector<signed char> table(static_cast<size_t>(s.f_total * s.g_total), -1);
    std::vector<bool> f_squarefree(static_cast<size_t>(s.f_total));
    {
        CodePoly f;
        for (long fp = 0; fp < s.f_total; ++fp) {
            unpack_monic(fp, s.q, s.n, f);
            f_squarefree[static_cast<size_t>(fp)] = s.squarefree(f);
        }
    }

    long workers = std::clamp<long>(threads, 1, s.g_total);
    auto run = [&](long w) {
        std::vector<long> scratch;
        CodePoly f, g;
        long chunk = (s.g_total + workers - 1) / workers;
        long lo = w * chunk, hi = std::min(s.g_total, lo + chunk);
        for (long gp = lo; gp < hi; ++gp) {
            unpack_monic(gp, s.q, s.m, g);
            if (!s.squarefree(g))
                continue;
            for (long fp = 0; fp < s.f_total; ++fp) {
                if (!f_squarefree[static_cast<size_t>(fp)])
                    continue;
                unpack_monic(fp, s.q, s.n, f);
                table[static_cast<size_t>(fp * s.g_total + gp)] =
                    static_cast<signed char>(s.resultant(f, g, scratch));
            }
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (long w = 0; w < workers; ++w)
            pool.emplace_back(run, w);
        for (std::thread& t : pool)
            t.join();
    }

    std::vector<long> counts(static_cast<size_t>(s.q), 0);
    for (signed char c : table)
        if (c >= 0)
            ++counts[static_cast<size_t>(c)];
    return counts;
}

}  // namespace

std::vector<Integer> resultant_value_counts(const FqContext& F, long n, long m,
                                            const CharSumOptions& opts) {
    if (n < 1 || m < 1)
        throw std::domain_error("character sums need degrees n, m >= 1");
    Integer cost;
    mpz_ui_pow_ui(cost.get_mpz_t(), static_cast<unsigned long>(F.q()),
                  static_cast<unsigned long>(n + m));
    if (cost > opts.budget || !cost.fits_slong_p())
        throw BudgetError(cost, opts.budget);
    if (opts.tabulate && cost > kTabulateLimit)
        throw std::invalid_argument("pair tabulation is limited to 10^6 resultants");

    PairSpace space = make_pair_space(F, n, m);
    std::vector<long> counts = opts.tabulate ? count_by_table(space, opts.threads)
                                             : count_by_enumeration(space, opts.threads);
    return std::vector<Integer>(counts.begin(), counts.end());
}

CharSumResult character_sum_from_counts(const FqContext& F, const Character& chi, long n,
                                        long m, const std::vector<Integer>& counts) {
    long q = F.q();
    if (static_cast<long>(chi.log_table.size()) != q ||
        static_cast<long>(counts.size()) != q)
        throw std::invalid_argument("character, field, and histogram sizes disagree");

    CharSumResult result;
    result.n = n;
    result.m = m;
    result.q = q;
    result.d = chi.order;
    result.value = Cyclotomic::from_integer(chi.order, 0);
    for (long c = 1; c < q; ++c) {
        const Integer& count = counts[static_cast<size_t>(c)];
        if (count == 0)
            continue;
        long log = chi.log_table[static_cast<size_t>(c)];
        Cyclotomic term = Cyclotomic::root_power(
            chi.order, (log % chi.order) * chi.twist % chi.order);
        result.value = result.value +
                       term * Cyclotomic::from_rational(chi.order, Rational(count));
    }
    result.magnitude = std::abs(result.value.to_complex());
    result.bound = bound(n, m, q, chi.order);
    result.within_bound = within_bound(result.magnitude, result.bound);
    return result;
}

CharSumResult character_sum(const FqContext& F, const Character& chi, long n, long m,
                            const CharSumOptions& opts) {
    return character_sum_from_counts(F, chi, n, m, resultant_value_counts(F, n, m, opts));
}

}  // namespace fn
