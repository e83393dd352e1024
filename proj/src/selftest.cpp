#include "fn/selftest.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "fn/charsum.hpp"
#include "fn/foxneuwirth.hpp"
#include "fn/intpoly.hpp"
#include "fn/matrix_io.hpp"
#include "fn/predict.hpp"
#include "fn/qshuffle.hpp"
#include "fn/shuffle.hpp"

namespace fn {
namespace {

// Always-on check: the first violated condition aborts its check with a
// message naming the exact instance, and the runner reports it.
struct CheckFailure {
    std::string message;
};

#define FN_REQUIRE(cond, msg)                 \
    do {                                      \
        if (!(cond)) throw CheckFailure{msg}; \
    } while (0)

std::string shape(long n, long m) {
    return "n=" + std::to_string(n) + ", m=" + std::to_string(m);
}

std::string param_name(const TwistParams& tw) {
    if (tw.order() == 1) return "untwisted";
    return "order-" + std::to_string(tw.order()) + " parameters";
}

Integer int_pow(long base, long exp) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base),
                  static_cast<unsigned long>(exp));
    return r;
}

Cyclotomic cyc_pow(const Cyclotomic& base, long e) {
    Cyclotomic r = Cyclotomic::from_integer(base.order(), 1);
    for (long i = 0; i < e; ++i) r = r * base;
    return r;
}

template <class T>
bool same_matrix(const SparseMatrix<T>& a, const SparseMatrix<T>& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a.entries() == b.entries();
}

SparseMatrix<Cyclotomic> to_cyclotomic(const SparseMatrix<Integer>& M) {
    SparseMatrix<Cyclotomic> out(M.rows(), M.cols());
    for (const auto& [idx, v] : M.entries())
        out.set(idx.first, idx.second, Cyclotomic::from_rational(1, Rational(v)));
    return out;
}

const std::vector<std::pair<long, long>>& twisted_param_specs() {
    // (order, p-exponent) with q = s = 1: p = -1, zeta_3, zeta_4.
    static const std::vector<std::pair<long, long>> specs = {{2, 1}, {3, 1}, {4, 1}};
    return specs;
}

FqContext field_for(long spec) {
    switch (spec) {
        case 0: return FqContext(3, 1);
        case 1: return FqContext(2, 2);
        case 2: return FqContext(5, 1);
        case 3: return FqContext(7, 1);
        default: return FqContext(3, 2);
    }
}

// --- 1: the differential squares to zero ------------------------------------

template <class T>
void require_complex(const ChainComplex& cx, const std::string& what,
                     const std::function<SparseMatrix<T>(long)>& boundary) {
    SparseMatrix<T> prev = boundary(cx.dim_min() + 1);
    for (long d = cx.dim_min() + 2; d <= cx.dim_max(); ++d) {
        SparseMatrix<T> next = boundary(d);
        FN_REQUIRE(prev.multiply(next).is_zero(),
                   "boundary composed with boundary is nonzero for the " + what + " complex at " +
                       shape(cx.n(), cx.m()) + ", degrees " + std::to_string(d) + " -> " +
                       std::to_string(d - 2));
        prev = std::move(next);
    }
}

void check_differential(const SelftestOptions& o) {
    long total = o.fast ? 5 : 7;
    for (long n = 1; n <= total; ++n)
        for (long m = 0; n + m <= total; ++m) {
            ChainComplex cx(n, m);
            require_complex<Integer>(cx, "untwisted",
                                     [&](long d) { return boundary_untwisted(cx, d); });
        }
    for (auto [order, pe] : twisted_param_specs()) {
        TwistParams tw = TwistParams::from_root_powers(order, pe, 0, 0);
        for (long n = 1; n <= 5; ++n)
            for (long m = 0; m <= 3; ++m) {
                if (o.fast && n + m > 5) continue;
                ChainComplex cx(n, m);
                require_complex<Cyclotomic>(cx, param_name(tw), [&](long d) {
                    return boundary_twisted(cx, d, tw);
                });
            }
    }
}

// --- 2: shuffle constants ----------------------------------------------------

void check_shuffle_constants(const SelftestOptions&) {
    for (long p = 0; p <= 10; ++p)
        for (long q = 0; p + q <= 10; ++q) {
            Integer expected = gaussian_binomial(p + q, q).eval(Integer(-1));
            FN_REQUIRE(c_pq_by_enumeration(p, q) == expected,
                       "signed shuffle count differs from the Gaussian binomial at -1 for p=" +
                           std::to_string(p) + ", q=" + std::to_string(q));
        }
    auto placements = [](const std::vector<Shuffle>& v) {
        std::set<std::vector<long>> s;
        for (const Shuffle& sh : v) s.insert(sh.placement);
        return s;
    };
    for (long p = 0; p <= 8; ++p)
        for (long q = 0; p + q <= 8; ++q) {
            std::vector<Shuffle> all = enumerate_shuffles(p, q);
            for (long j = 0; j < p; ++j)
                for (long h = 0; h <= q; ++h) {
                    std::set<std::vector<long>> brute;
                    for (const Shuffle& s : all)
                        if (s.targets()[static_cast<size_t>(j)] == j + h + 1)
                            brute.insert(s.placement);
                    FN_REQUIRE(
                        placements(enumerate_h_j_shuffles(p, q, h, j, MarkSide::left_block)) ==
                            brute,
                        "left-marked (h,j)-shuffles differ from the brute filter at p=" +
                            std::to_string(p) + ", q=" + std::to_string(q) + ", h=" +
                            std::to_string(h) + ", j=" + std::to_string(j));
                }
            for (long j = 0; j < q; ++j)
                for (long h = 0; h <= p; ++h) {
                    std::set<std::vector<long>> brute;
                    for (const Shuffle& s : all)
                        if (s.targets()[static_cast<size_t>(p + j)] == h + j + 1)
                            brute.insert(s.placement);
                    FN_REQUIRE(
                        placements(enumerate_h_j_shuffles(p, q, h, j, MarkSide::right_block)) ==
                            brute,
                        "right-marked (h,j)-shuffles differ from the brute filter at p=" +
                            std::to_string(p) + ", q=" + std::to_string(q) + ", h=" +
                            std::to_string(h) + ", j=" + std::to_string(j));
                }
        }
}

// --- 3: the two engines emit identical matrices ------------------------------

void check_engines_agree(const SelftestOptions& o) {
    std::vector<TwistParams> sets = {TwistParams::untwisted()};
    for (auto [order, pe] : twisted_param_specs())
        sets.push_back(TwistParams::from_root_powers(order, pe, 0, 0));
    for (const TwistParams& tw : sets)
        for (long n = 1; n <= 4; ++n)
            for (long m = 1; m <= 2; ++m) {
                if (o.fast && n + m > 5) continue;
                ChainComplex cx(n, m);
                FComplex fc(n, m);
                for (long qd = fc.deg_min() + 1; qd <= fc.deg_max(); ++qd)
                    FN_REQUIRE(same_matrix(f_boundary(fc, qd, tw),
                                           boundary_twisted(cx, qd + n - m, tw)),
                               "the block complex and the cell complex disagree at " +
                                   shape(n, m) + ", block degree " + std::to_string(qd) +
                                   ", " + param_name(tw));
            }
}

// --- 4/5: homology dimension theorems ----------------------------------------

// Compares every computed degree against the prediction and reports all
// mismatches for the shape at once, so a failure shows the complete pattern
// rather than aborting at the first bad degree.
std::string dim_mismatches(const ChainComplex& cx, const TwistParams& tw,
                           const std::function<Integer(long)>& expected) {
    std::map<long, long> dims = dualize_dims(homology_dims(cx, tw), cx.n());
    if (dims.count(cx.n()) != 1 || dims.count(cx.n() - 1) != 1)
        return "homology report misses the expected degrees at " + shape(cx.n(), cx.m());
    std::string bad;
    for (const auto& [j, dim] : dims)
        if (Integer(dim) != expected(j)) {
            if (!bad.empty()) bad += ", ";
            bad += "degree " + std::to_string(j) + " predicted " + expected(j).get_str() +
                   " computed " + std::to_string(dim);
        }
    return bad.empty() ? bad : shape(cx.n(), cx.m()) + ": " + bad;
}

void check_quadratic_dims(const SelftestOptions& o) {
    TwistParams tw = TwistParams::from_root_powers(2, 1, 0, 0);
    std::string bad;
    for (long n = 1; n <= 5; ++n)
        for (long m = 1; m <= 3; ++m) {
            if (o.fast && n + m > 5) continue;
            ChainComplex cx(n, m);
            std::string here = dim_mismatches(cx, tw, [&](long j) {
                if (j == n) return composition_count_P_by_enumeration(n + m + 1, 2, m);
                if (j == n - 1) return composition_count_P_by_enumeration(n + m - 1, 2, m);
                return Integer(0);
            });
            if (!here.empty()) bad += (bad.empty() ? "" : "; ") + here;
        }
    FN_REQUIRE(bad.empty(), "the composition count disagrees at " + bad);
}

void check_generic_dims(const SelftestOptions& o) {
    std::string bad;
    for (auto [order, pe] : {std::pair<long, long>{3, 1}, {4, 1}}) {
        TwistParams tw = TwistParams::from_root_powers(order, pe, 0, 0);
        for (long n = 1; n <= 5; ++n)
            for (long m = 1; m <= 3; ++m) {
                if (o.fast && n + m > 5) continue;
                PredictionReport pred = punctured_dims_generic(n, m);
                if (m >= 2)
                    FN_REQUIRE(pred.dim_at(n) ==
                                   gaussian_binomial(n + m - 2, m - 2).eval(Integer(1)),
                               "the top prediction is not the binomial at " + shape(n, m));
                ChainComplex cx(n, m);
                std::string here =
                    dim_mismatches(cx, tw, [&](long j) { return pred.dim_at(j); });
                if (!here.empty())
                    bad += (bad.empty() ? "" : "; ") + param_name(tw) + " " + here;
            }
    }
    FN_REQUIRE(bad.empty(), "the binomial prediction disagrees at " + bad);
}

// --- 6: the closed bimodule product ------------------------------------------

void check_bimodule_product(const SelftestOptions&) {
    std::vector<TwistParams> sets = {TwistParams::untwisted(),
                                     TwistParams::from_root_powers(2, 1, 0, 0),
                                     TwistParams::from_root_powers(12, 4, 3, 5)};
    for (const TwistParams& tw : sets) {
        Cyclotomic zero(tw.order());
        auto value_of = [&](const std::map<long, Cyclotomic>& m, long k) {
            auto it = m.find(k);
            return it == m.end() ? zero : it->second;
        };
        for (long n = 1; n <= 6; ++n)
            for (long a = 1; a <= 4; ++a) {
                std::map<long, Cyclotomic> direct = right_mul({n, n}, a, tw);
                std::map<long, Cyclotomic> expanded;
                for (const auto& [h, c] : right_mul_closed(n, a, tw)) {
                    if (h == a) {
                        expanded[n + a] = value_of(expanded, n + a) + c;
                        continue;
                    }
                    for (const auto& [f, lc] : left_mul(a - h, {n + h, n + h}, tw))
                        expanded[f] = value_of(expanded, f) + c * lc;
                }
                std::set<long> keys;
                for (const auto& [k, v] : direct) keys.insert(k);
                for (const auto& [k, v] : expanded) keys.insert(k);
                for (long k : keys)
                    FN_REQUIRE(value_of(direct, k) == value_of(expanded, k),
                               "closed product and shuffle walk disagree on the height-" +
                                   std::to_string(k) + " component at n=" + std::to_string(n) +
                                   ", a=" + std::to_string(a) + ", " + param_name(tw));
            }
    }
    // With the braiding a primitive square root of one (q = 1 so -q = -1) and
    // p = -1, the single-step product vanishes exactly at even block sizes.
    TwistParams tw = TwistParams::from_root_powers(2, 1, 0, 0);
    for (long n = 1; n <= 8; ++n) {
        std::map<long, Cyclotomic> closed = right_mul_closed(n, 1, tw);
        bool vanishes = closed.find(1) == closed.end() || closed.at(1).is_zero();
        FN_REQUIRE(vanishes == (n % 2 == 0),
                   "single-step product vanishing is wrong at n=" + std::to_string(n));
    }
}

// --- 7: character sums -------------------------------------------------------

void check_character_sums(const SelftestOptions& o) {
    Integer limit(o.fast ? 10000 : 1000000);
    for (long spec = 0; spec < 5; ++spec) {
        FqContext F = field_for(spec);
        long q = F.q();
        std::vector<long> ds;
        for (long d = 2; d <= 6; ++d)
            if ((q - 1) % d == 0) ds.push_back(d);
        std::vector<Character> chis;
        std::vector<Cyclotomic> chi_at_minus_one;
        for (long d : ds) {
            chis.push_back(make_character(F, d));
            chi_at_minus_one.push_back(char_eval(F, chis.back(), F.neg(F.one())));
        }
        CharSumOptions copts;
        copts.threads = o.threads;
        std::map<std::tuple<long, long, long>, Cyclotomic> values;  // (d, n, m) -> sum
        for (long n = 1; int_pow(q, n + 1) <= limit; ++n)
            for (long m = 1; int_pow(q, n + m) <= limit; ++m) {
                std::vector<Integer> counts = resultant_value_counts(F, n, m, copts);
                for (size_t i = 0; i < chis.size(); ++i) {
                    CharSumResult r = character_sum_from_counts(F, chis[i], n, m, counts);
                    FN_REQUIRE(r.within_bound,
                               "character sum exceeds its bound at q=" + std::to_string(q) +
                                   ", d=" + std::to_string(ds[i]) + ", " + shape(n, m) +
                                   " (|F|=" + std::to_string(r.magnitude) + ", bound " +
                                   std::to_string(r.bound) + ")");
                    values[{ds[i], n, m}] = r.value;
                }
            }
        for (size_t i = 0; i < chis.size(); ++i)
            FN_REQUIRE(values.at({ds[i], 1, 1}).is_zero(),
                       "the linear-pair sum is nonzero at q=" + std::to_string(q) +
                           ", d=" + std::to_string(ds[i]));
        for (const auto& [key, value] : values) {
            auto [d, n, m] = key;
            size_t i = 0;
            while (ds[i] != d) ++i;
            FN_REQUIRE(values.at({d, m, n}) == cyc_pow(chi_at_minus_one[i], n * m) * value,
                       "the degree-swap law fails at q=" + std::to_string(q) +
                           ", d=" + std::to_string(d) + ", " + shape(n, m));
        }
    }
}

// --- 8: square-free counts ---------------------------------------------------

void check_squarefree_counts(const SelftestOptions&) {
    for (long q : {3L, 5L, 7L}) {
        FqContext F(q, 1);
        for (long n = 2; n <= 6; ++n) {
            Integer expected = int_pow(q, n) - int_pow(q, n - 1);
            FN_REQUIRE(Integer(enumerate_monic_squarefree(F, n).size()) == expected,
                       "square-free count differs from q^n - q^(n-1) at q=" +
                           std::to_string(q) + ", n=" + std::to_string(n));
        }
    }
}

// --- 9: untwisted regressions ------------------------------------------------

IntegralHomology homology_at(const std::map<long, IntegralHomology>& h, long j) {
    auto it = h.find(j);
    return it == h.end() ? IntegralHomology{} : it->second;
}

void check_untwisted_regressions(const SelftestOptions&) {
    for (long n : {2L, 3L})
        for (long m : {1L, 2L}) {
            ChainComplex cx(n, m);
            auto open = dualize_integral(integral_homology(cx), n);
            FN_REQUIRE(homology_at(open, 1).free_rank == m + 1,
                       "first homology rank is not m+1 at " + shape(n, m));
        }
    for (long n : {2L, 3L}) {
        ChainComplex cx(n, 0);
        auto open = dualize_integral(integral_homology(cx), n);
        IntegralHomology z{1, {}};
        FN_REQUIRE(homology_at(open, 0) == z,
                   "plane configuration space is not connected at n=" + std::to_string(n));
        FN_REQUIRE(homology_at(open, 1) == z,
                   "plane configuration space does not have first homology Z at n=" +
                       std::to_string(n));
    }
}

// --- 10: parameter invariance ------------------------------------------------

void check_parameter_invariance(const SelftestOptions& o) {
    for (auto [order, pe] : {std::pair<long, long>{2, 1}, {3, 1}}) {
        Cyclotomic p = Cyclotomic::root_power(order, pe);
        Cyclotomic unit_q = Cyclotomic::from_integer(order, 1);
        for (long n = 1; n <= 3; ++n)
            for (long m = 0; m <= 2; ++m) {
                ChainComplex cx(n, m);
                std::map<long, long> reference;
                for (long s : {1L, -1L, 2L}) {
                    TwistParams tw(p, unit_q, Cyclotomic::from_integer(order, s));
                    std::map<long, long> dims = homology_dims(cx, tw);
                    if (s == 1)
                        reference = dims;
                    else
                        FN_REQUIRE(dims == reference,
                                   "homology changed under rescaling s=" + std::to_string(s) +
                                       " at " + shape(n, m) + ", " + param_name(tw));
                }
            }
    }
    long total = o.fast ? 4 : 5;
    for (long n = 1; n <= total; ++n)
        for (long m = 0; n + m <= total; ++m) {
            ChainComplex cx(n, m);
            for (long d = cx.dim_min() + 1; d <= cx.dim_max(); ++d)
                FN_REQUIRE(same_matrix(boundary_twisted(cx, d, TwistParams::untwisted()),
                                       to_cyclotomic(boundary_untwisted(cx, d))),
                           "all-one parameters do not reduce to the untwisted boundary at " +
                               shape(n, m) + ", degree " + std::to_string(d));
        }
}

// --- optional: stored matrix files -------------------------------------------

void check_golden(const SelftestOptions& o) {
    auto fail_as_check = [](const std::function<void()>& body) {
        try {
            body();
        } catch (const std::exception& e) {
            throw CheckFailure{e.what()};
        }
    };
    for (long n = 1; n <= 5; ++n)
        for (long m = 0; n + m <= 5; ++m) {
            ChainComplex cx(n, m);
            for (long d = cx.dim_min() + 1; d <= cx.dim_max(); ++d) {
                std::string name = matrix_filename(n, m, d, TwistParams::untwisted());
                fail_as_check([&] {
                    FN_REQUIRE(same_matrix(read_integer_matrix_file(o.golden_dir + "/" + name),
                                           boundary_untwisted(cx, d)),
                               "stored matrix " + name + " differs from the recomputed boundary");
                });
            }
        }
    TwistParams minus = TwistParams::from_root_powers(2, 1, 0, 0);
    for (auto [n, m] : {std::pair<long, long>{2, 1}, {3, 2}}) {
        ChainComplex cx(n, m);
        for (long d = cx.dim_min() + 1; d <= cx.dim_max(); ++d) {
            std::string name = matrix_filename(n, m, d, minus);
            fail_as_check([&] {
                FN_REQUIRE(same_matrix(read_matrix_file(o.golden_dir + "/" + name),
                                       boundary_twisted(cx, d, minus)),
                           "stored matrix " + name + " differs from the recomputed boundary");
            });
        }
    }
}

#undef FN_REQUIRE

}  // namespace

std::vector<CheckResult> run_selftest(std::ostream& out, const SelftestOptions& opts) {
    using CheckFn = void (*)(const SelftestOptions&);
    std::vector<std::pair<std::string, CheckFn>> checks = {
        {"differential squares to zero", check_differential},
        {"shuffle constants match their enumerations", check_shuffle_constants},
        {"cell and block engines emit identical matrices", check_engines_agree},
        {"quadratic parameters match the composition-count dimensions", check_quadratic_dims},
        {"generic parameters match the binomial dimensions", check_generic_dims},
        {"closed bimodule product matches the shuffle walk", check_bimodule_product},
        {"character sums obey the bound, vanishing, and swap laws", check_character_sums},
        {"square-free polynomial counts match the formula", check_squarefree_counts},
        {"untwisted homology matches the classical answers", check_untwisted_regressions},
        {"homology is invariant under unit rescaling", check_parameter_invariance},
    };
    if (!opts.golden_dir.empty())
        checks.emplace_back("stored boundary matrices match recomputation", check_golden);

    std::vector<CheckResult> results;
    for (const auto& [name, fn] : checks) {
        CheckResult r;
        r.name = name;
        auto start = std::chrono::steady_clock::now();
        try {
            fn(opts);
            r.passed = true;
        } catch (const CheckFailure& f) {
            r.passed = false;
            r.detail = f.message;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("unexpected error: ") + e.what();
        }
        r.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", r.seconds);
        if (r.passed)
            out << "[PASS] " << r.name << " (" << timing << ")\n";
        else
            out << "[FAIL] " << r.name << ": " << r.detail << " (" << timing << ")\n";
        out.flush();
        results.push_back(std::move(r));
    }
    return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const CheckResult& r : results)
        if (!r.passed) return false;
    return !results.empty();
}

}  // namespace fn
