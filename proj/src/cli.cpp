#include "fn/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "fn/charsum.hpp"
#include "fn/cyclotomic.hpp"
#include "fn/ffield.hpp"
#include "fn/foxneuwirth.hpp"
#include "fn/matrix_io.hpp"
#include "fn/predict.hpp"
#include "fn/qshuffle.hpp"
#include "fn/selftest.hpp"
#include "json.hpp"

namespace fn {
namespace {

using njson = nlohmann::ordered_json;

const char* kUsage = R"(fnhom - exact homology and character-sum toolkit

usage: fnhom <command> [flags]

commands:
  charsum    exact character sums of the resultant over a finite field
  homology   twisted homology of punctured-plane configuration complexes
  selftest   run the full verification suite

charsum flags:
  --q INT          field size (prime power, required)
  --n RANGE        first polynomial degree, e.g. 2 or 1..3 (required)
  --m RANGE        second polynomial degree (required)
  --order RANGE    character order(s); alias --d (required; every order must
                   exceed 1, and at least one must divide q-1)
  --budget INT     maximum resultant evaluations (default 100000000; the
                   FNHOM_BUDGET variable overrides the default)
  --threads INT    worker threads (default: available parallelism)
  --format FMT     json (default) or csv
  --output PATH    write the report to PATH instead of stdout

homology flags:
  --n RANGE        number of moving points (required)
  --m RANGE        number of punctures (required; 0 allowed)
  --p-order INT --p-exp INT    wraparound parameter zeta_order^exp
  --q-order INT --q-exp INT    braiding parameter
  --u-order INT --u-exp INT    marked-marked braiding parameter
  --s-order INT --s-exp INT    unit rescaling parameter
                   (defaults: order 1; exp defaults to 1 when its order
                   exceeds 1, so --p-order 2 alone means p = -1)
  --emit-matrices DIR   write every boundary matrix in the documented format
  --budget INT     cell-count budget (default: refuse n > 5 or m > 3)
  --threads, --format, --output as above

selftest flags:
  --fast           restrict sweeps to shapes with n + m <= 5
  --golden-dir DIR stored boundary matrices to verify against
  --threads INT    worker threads
  --output PATH    write the report to PATH

exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget refusal
)";

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

std::string fixed9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", v);
    return buf;
}

njson coeff_list(const Cyclotomic& z) {
    njson a = njson::array();
    for (const Rational& c : z.coeffs()) a.push_back(c.get_str());
    return a;
}

std::string coeff_csv(const Cyclotomic& z) {
    std::string s;
    for (const Rational& c : z.coeffs()) {
        if (!s.empty()) s += ';';
        s += c.get_str();
    }
    return s;
}

void emit(std::ostream& out, const njson& doc) { out << doc.dump(2) << "\n"; }

// --- charsum -------------------------------------------------------------------

struct CharSumJob {
    long n = 0, m = 0;
    std::vector<Integer> counts;
    bool budget_hit = false;
    Integer cost, budget;
};

int run_charsum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto [prime, k] = prime_power_split(cfg.q);
    FqContext F(prime, k);
    std::vector<long> orders;
    for (long d = std::max<long>(2, cfg.d.lo); d <= cfg.d.hi; ++d)
        if ((cfg.q - 1) % d == 0) orders.push_back(d);

    std::vector<CharSumJob> jobs;
    for (long n = cfg.n.lo; n <= cfg.n.hi; ++n)
        for (long m = cfg.m.lo; m <= cfg.m.hi; ++m) jobs.push_back({n, m, {}, false, 0, 0});

    // One histogram per shape; every character order reads from it.  The
    // worker pool runs whole shapes when there are several, and threads the
    // single enumeration otherwise; either way the output is assembled in
    // job order, so the report is byte-identical for any thread count.
    int threads = resolve_threads(cfg.threads);
    int outer = std::min<int>(threads, static_cast<int>(jobs.size()));
    CharSumOptions opts;
    opts.budget = cfg.budget.value_or(opts.budget);
    opts.threads = jobs.size() == 1 ? threads : 1;
    std::atomic<size_t> next{0};
    std::exception_ptr broken;
    std::mutex broken_mutex;
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
            CharSumJob& job = jobs[i];
            try {
                job.counts = resultant_value_counts(F, job.n, job.m, opts);
            } catch (const BudgetError& e) {
                job.budget_hit = true;
                job.cost = e.cost();
                job.budget = e.budget();
            } catch (...) {
                std::lock_guard<std::mutex> lock(broken_mutex);
                if (!broken) broken = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < outer; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    if (broken) std::rethrow_exception(broken);

    for (const CharSumJob& job : jobs)
        if (job.budget_hit) {
            err << "charsum at n=" << job.n << ", m=" << job.m << ": estimated cost "
                << job.cost.get_str() << " exceeds the budget " << job.budget.get_str()
                << " (raise --budget or FNHOM_BUDGET)\n";
            return kExitBudget;
        }

    bool all_ok = true;
    njson rows = njson::array();
    std::string csv = "n,m,q,order,twist,value,magnitude,bound,within_bound\n";
    for (const CharSumJob& job : jobs)
        for (long d : orders) {
            Character chi = make_character(F, d, 1);
            CharSumResult r = character_sum_from_counts(F, chi, job.n, job.m, job.counts);
            all_ok = all_ok && r.within_bound;
            njson row;
            row["n"] = r.n;
            row["m"] = r.m;
            row["q"] = r.q;
            row["order"] = r.d;
            row["twist"] = 1;
            row["value"] = coeff_list(r.value);
            row["magnitude"] = fixed9(r.magnitude);
            row["bound"] = fixed9(r.bound);
            row["within_bound"] = r.within_bound;
            rows.push_back(std::move(row));
            csv += std::to_string(r.n) + "," + std::to_string(r.m) + "," +
                   std::to_string(r.q) + "," + std::to_string(r.d) + ",1," + coeff_csv(r.value) +
                   "," + fixed9(r.magnitude) + "," + fixed9(r.bound) + "," +
                   (r.within_bound ? "true" : "false") + "\n";
        }

    if (cfg.format == OutputFormat::csv) {
        out << csv;
    } else {
        njson doc;
        doc["schema"] = 1;
        doc["command"] = "charsum";
        doc["q"] = cfg.q;
        doc["rows"] = std::move(rows);
        doc["all_within_bound"] = all_ok;
        emit(out, doc);
    }
    return all_ok ? kExitOk : kExitVerificationFailure;
}

// --- homology ------------------------------------------------------------------

enum class PredictionMode { none, composition_count, binomial, integral };

struct ScaledParams {
    long order = 1;
    long pe = 0, qe = 0, ue = 0, se = 0;
};

ScaledParams scale_params(const RunConfig& cfg) {
    ScaledParams sp;
    sp.order = std::lcm(std::lcm(cfg.p.order, cfg.q_br.order),
                        std::lcm(cfg.u.order, cfg.s.order));
    auto scale = [&](const RootSpec& r) {
        long e = (r.exp % r.order + r.order) % r.order;
        return e * (sp.order / r.order);
    };
    sp.pe = scale(cfg.p);
    sp.qe = scale(cfg.q_br);
    sp.ue = scale(cfg.u);
    sp.se = scale(cfg.s);
    return sp;
}

// Classifies the parameter point: with L = 1 everything is untwisted and the
// integral answer with torsion is the report; otherwise the closed forms
// split on whether p equals -q (composition-count dimensions, with r the
// multiplicative order of -q) or p avoids every power of -q (binomial
// dimensions).  A p that is a power of -q without being -q itself has no
// closed form wired in, and the report carries no prediction.
PredictionMode classify(const TwistParams& tw, long* r_out) {
    if (tw.order() == 1) return PredictionMode::integral;
    Cyclotomic minus_q = -tw.q;
    Cyclotomic one = tw.one();
    Cyclotomic acc = one;
    long r = 0;
    bool p_is_power = false, p_is_minus_q = false;
    for (long e = 1; e <= 2 * tw.order(); ++e) {
        acc *= minus_q;
        if (acc == tw.p) {
            p_is_power = true;
            if (e == 1) p_is_minus_q = true;
        }
        if (acc == one) {
            r = e;
            break;
        }
    }
    if (r == 0) throw std::logic_error("root of unity with no finite order");
    if (r_out) *r_out = r;
    if (p_is_minus_q) return PredictionMode::composition_count;
    if (p_is_power) return PredictionMode::none;
    return PredictionMode::binomial;
}

struct HomologyJob {
    long n = 0, m = 0;
    bool have_block = false, have_prediction = false;
    bool engines_agree = true, prediction_matches = true;
    std::map<long, long> cell_dims, block_dims;
    std::map<long, IntegralHomology> integral;
    PredictionReport pred;
};

long dim_of(const std::map<long, long>& dims, long j) {
    auto it = dims.find(j);
    return it == dims.end() ? 0L : it->second;
}

int run_homology(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    TwistParams tw = twist_from_specs(cfg.p, cfg.q_br, cfg.u, cfg.s);
    ScaledParams sp = scale_params(cfg);
    long r = 0;
    PredictionMode mode = classify(tw, &r);

    for (long n = cfg.n.lo; n <= cfg.n.hi; ++n)
        for (long m = cfg.m.lo; m <= cfg.m.hi; ++m) {
            Integer cells = cell_total(n, m);
            if (cfg.budget.has_value()) {
                if (cells > *cfg.budget) {
                    err << "homology at n=" << n << ", m=" << m << ": the complex holds "
                        << cells.get_str() << " cells, over the budget "
                        << cfg.budget->get_str() << "\n";
                    return kExitBudget;
                }
            } else if (n > 5 || m > 3) {
                err << "homology at n=" << n << ", m=" << m
                    << ": outside the default shape budget (n <= 5, m <= 3); the complex holds "
                    << cells.get_str() << " cells; pass --budget to override\n";
                return kExitBudget;
            }
        }

    if (!cfg.emit_dir.empty()) std::filesystem::create_directories(cfg.emit_dir);

    std::vector<HomologyJob> jobs;
    for (long n = cfg.n.lo; n <= cfg.n.hi; ++n)
        for (long m = cfg.m.lo; m <= cfg.m.hi; ++m) {
            HomologyJob job;
            job.n = n;
            job.m = m;
            jobs.push_back(job);
        }

    // The shapes are independent; the pool computes them out of order and the
    // report is assembled from the job list afterwards, so the bytes do not
    // depend on the thread count.  Emission is safe inside the pool: each job
    // writes only its own files.
    std::atomic<size_t> next{0};
    std::exception_ptr broken;
    std::mutex broken_mutex;
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
            HomologyJob& job = jobs[i];
            try {
                ChainComplex cx(job.n, job.m);
                job.cell_dims = dualize_dims(homology_dims(cx, tw), job.n);
                job.have_block = job.m >= 1;
                if (job.have_block) {
                    FComplex fc(job.n, job.m);
                    for (const auto& [fdeg, dim] : f_homology_dims(fc, tw))
                        job.block_dims[job.n + job.m - fdeg] = dim;
                    for (long j = 0; j <= job.n; ++j)
                        job.engines_agree = job.engines_agree &&
                                            dim_of(job.cell_dims, j) == dim_of(job.block_dims, j);
                }
                job.have_prediction =
                    job.m >= 1 && (mode == PredictionMode::composition_count ||
                                   mode == PredictionMode::binomial);
                if (job.have_prediction) {
                    job.pred = mode == PredictionMode::composition_count
                                   ? punctured_dims_quadratic(job.n, job.m, r)
                                   : punctured_dims_generic(job.n, job.m);
                    for (long j = 0; j <= job.n; ++j)
                        job.prediction_matches =
                            job.prediction_matches &&
                            job.pred.dim_at(j) == Integer(dim_of(job.cell_dims, j));
                }
                if (mode == PredictionMode::integral)
                    job.integral = dualize_integral(integral_homology(cx), job.n);
                if (!cfg.emit_dir.empty())
                    for (long d = cx.dim_min() + 1; d <= cx.dim_max(); ++d) {
                        std::filesystem::path path = std::filesystem::path(cfg.emit_dir) /
                                                     matrix_filename(job.n, job.m, d, tw);
                        if (tw.order() == 1)
                            write_matrix_file(path.string(), boundary_untwisted(cx, d));
                        else
                            write_matrix_file(path.string(), boundary_twisted(cx, d, tw),
                                              tw.order());
                    }
            } catch (...) {
                std::lock_guard<std::mutex> lock(broken_mutex);
                if (!broken) broken = std::current_exception();
                return;
            }
        }
    };
    int pool_size = std::min<int>(resolve_threads(cfg.threads), static_cast<int>(jobs.size()));
    std::vector<std::thread> pool;
    for (int t = 1; t < pool_size; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    if (broken) std::rethrow_exception(broken);

    bool all_ok = true;
    njson rows = njson::array();
    std::string csv =
        "n,m,degree,cell_dim,block_dim,predicted_dim,engines_agree,prediction_matches,"
        "free_rank,torsion\n";
    for (HomologyJob& job : jobs) {
        njson degrees = njson::array();
        for (long j = 0; j <= job.n; ++j) {
            njson deg;
            deg["j"] = j;
            deg["cell"] = dim_of(job.cell_dims, j);
            if (job.have_block)
                deg["block"] = dim_of(job.block_dims, j);
            else
                deg["block"] = nullptr;
            if (job.have_prediction)
                deg["predicted"] = job.pred.dim_at(j).get_str();
            else
                deg["predicted"] = nullptr;
            std::string free_rank_csv, torsion_csv;
            if (mode == PredictionMode::integral) {
                const IntegralHomology& ih = job.integral[j];
                deg["free_rank"] = ih.free_rank;
                njson tor = njson::array();
                for (const Integer& t : ih.torsion) {
                    tor.push_back(t.get_str());
                    if (!torsion_csv.empty()) torsion_csv += ';';
                    torsion_csv += t.get_str();
                }
                deg["torsion"] = std::move(tor);
                free_rank_csv = std::to_string(ih.free_rank);
            }
            degrees.push_back(std::move(deg));
            csv += std::to_string(job.n) + "," + std::to_string(job.m) + "," +
                   std::to_string(j) + "," + std::to_string(dim_of(job.cell_dims, j)) + "," +
                   (job.have_block ? std::to_string(dim_of(job.block_dims, j)) : "") + "," +
                   (job.have_prediction ? job.pred.dim_at(j).get_str() : "") + "," +
                   (job.engines_agree ? "true" : "false") + "," +
                   (job.have_prediction ? (job.prediction_matches ? "true" : "false") : "") +
                   "," + free_rank_csv + "," + torsion_csv + "\n";
        }

        all_ok = all_ok && job.engines_agree && (!job.have_prediction || job.prediction_matches);
        njson row;
        row["n"] = job.n;
        row["m"] = job.m;
        row["degrees"] = std::move(degrees);
        row["engines_agree"] = job.have_block ? njson(job.engines_agree) : njson(nullptr);
        switch (mode) {
            case PredictionMode::composition_count:
                row["prediction"] = job.m >= 1 ? njson("composition-count") : njson(nullptr);
                break;
            case PredictionMode::binomial:
                row["prediction"] = job.m >= 1 ? njson("binomial") : njson(nullptr);
                break;
            case PredictionMode::integral:
                row["prediction"] = "integral";
                break;
            case PredictionMode::none:
                row["prediction"] = nullptr;
                break;
        }
        row["prediction_matches"] =
            job.have_prediction ? njson(job.prediction_matches) : njson(nullptr);
        rows.push_back(std::move(row));
    }

    if (cfg.format == OutputFormat::csv) {
        out << csv;
    } else {
        njson doc;
        doc["schema"] = 1;
        doc["command"] = "homology";
        njson params;
        params["order"] = sp.order;
        params["p"] = sp.pe;
        params["q"] = sp.qe;
        params["u"] = sp.ue;
        params["s"] = sp.se;
        doc["params"] = std::move(params);
        doc["rows"] = std::move(rows);
        doc["all_verified"] = all_ok;
        emit(out, doc);
    }
    return all_ok ? kExitOk : kExitVerificationFailure;
}

// --- selftest ------------------------------------------------------------------

int run_selftest_cmd(const RunConfig& cfg, std::ostream& out) {
    SelftestOptions o;
    o.fast = cfg.fast;
    o.threads = resolve_threads(cfg.threads);
    o.golden_dir = cfg.golden_dir;
    std::vector<CheckResult> results = run_selftest(out, o);
    size_t passed = 0;
    for (const CheckResult& r : results) passed += r.passed ? 1 : 0;
    out << passed << " of " << results.size() << " checks passed\n";
    return all_passed(results) ? kExitOk : kExitVerificationFailure;
}

}  // namespace

// --- parsing -------------------------------------------------------------------

Range parse_range(const std::string& text) {
    auto parse_long = [&](const std::string& part) {
        size_t used = 0;
        long v = 0;
        try {
            v = std::stol(part, &used);
        } catch (const std::exception&) {
            throw UsageError("malformed range '" + text + "'");
        }
        if (used != part.size()) throw UsageError("malformed range '" + text + "'");
        return v;
    };
    Range r;
    size_t dots = text.find("..");
    if (dots == std::string::npos) {
        r.lo = r.hi = parse_long(text);
    } else {
        r.lo = parse_long(text.substr(0, dots));
        r.hi = parse_long(text.substr(dots + 2));
    }
    if (r.lo > r.hi) throw UsageError("empty range '" + text + "'");
    return r;
}

std::pair<long, long> prime_power_split(long q) {
    if (q < 2) throw UsageError("field size must be at least 2, got " + std::to_string(q));
    long p = q;
    for (long f = 2; f * f <= q; ++f)
        if (q % f == 0) {
            p = f;
            break;
        }
    long k = 0, rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++k;
    }
    if (rest != 1)
        throw UsageError("field size " + std::to_string(q) + " is not a prime power");
    return {p, k};
}

Integer cell_total(long n, long m) {
    if (n < 1 || m < 0) throw UsageError("cell counting needs n >= 1 and m >= 0");
    // count[points][fixed]: ways to lay out columns holding `points` points of
    // which `fixed` columns are pinned, a pinned column of size c contributing
    // its c choices of split.
    long total = n + m;
    std::vector<std::vector<Integer>> count(static_cast<size_t>(total) + 1,
                                            std::vector<Integer>(static_cast<size_t>(m) + 1, 0));
    count[0][0] = 1;
    for (long pts = 1; pts <= total; ++pts)
        for (long fixed = 0; fixed <= m; ++fixed) {
            Integer acc = 0;
            for (long c = 1; c <= pts; ++c) {
                acc += count[pts - c][fixed];
                if (fixed >= 1) acc += Integer(c) * count[pts - c][fixed - 1];
            }
            count[pts][fixed] = acc;
        }
    return count[total][m];
}

TwistParams twist_from_specs(const RootSpec& p, const RootSpec& q_br, const RootSpec& u,
                             const RootSpec& s) {
    for (const RootSpec* r : {&p, &q_br, &u, &s})
        if (r->order < 1)
            throw UsageError("root-of-unity orders must be positive, got " +
                             std::to_string(r->order));
    long L = std::lcm(std::lcm(p.order, q_br.order), std::lcm(u.order, s.order));
    auto lift = [&](const RootSpec& r) { return r.exp * (L / r.order); };
    return TwistParams::from_root_powers(L, lift(p), lift(q_br), lift(s));
}

RunConfig parse_run_config(const std::vector<std::string>& args) {
    CLI::App app{"fnhom"};
    app.set_help_flag();
    app.require_subcommand(1);

    RunConfig cfg;
    std::string n_text, m_text, d_text, format_text = "json", budget_text;
    constexpr long kExpUnset = std::numeric_limits<long>::min();

    CLI::App* charsum = app.add_subcommand("charsum");
    charsum->set_help_flag();
    charsum->add_option("--q", cfg.q)->required();
    charsum->add_option("--n", n_text)->required();
    charsum->add_option("--m", m_text)->required();
    charsum->add_option("--order,--d", d_text)->required();

    CLI::App* homology = app.add_subcommand("homology");
    homology->set_help_flag();
    homology->add_option("--n", n_text)->required();
    homology->add_option("--m", m_text)->required();
    struct RawRoot {
        long order = 1;
        long exp = kExpUnset;
    };
    RawRoot rp, rq, ru, rs;
    homology->add_option("--p-order", rp.order);
    homology->add_option("--p-exp", rp.exp);
    homology->add_option("--q-order", rq.order);
    homology->add_option("--q-exp", rq.exp);
    homology->add_option("--u-order", ru.order);
    homology->add_option("--u-exp", ru.exp);
    homology->add_option("--s-order", rs.order);
    homology->add_option("--s-exp", rs.exp);
    homology->add_option("--emit-matrices", cfg.emit_dir);

    CLI::App* selftest = app.add_subcommand("selftest");
    selftest->set_help_flag();
    selftest->add_flag("--fast", cfg.fast);
    selftest->add_option("--golden-dir", cfg.golden_dir);

    for (CLI::App* sub : {charsum, homology}) {
        sub->add_option("--budget", budget_text);
        sub->add_option("--format", format_text);
    }
    for (CLI::App* sub : {charsum, homology, selftest}) {
        sub->add_option("--threads", cfg.threads);
        sub->add_option("--output", cfg.output_path);
    }

    std::vector<const char*> argv;
    argv.push_back("fnhom");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Error& e) {
        throw UsageError(e.what());
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (cfg.threads < 0) throw UsageError("--threads must be nonnegative");

    if (format_text == "json")
        cfg.format = OutputFormat::json;
    else if (format_text == "csv")
        cfg.format = OutputFormat::csv;
    else
        throw UsageError("unknown format '" + format_text + "' (expected json or csv)");

    if (budget_text.empty())
        if (const char* env = std::getenv("FNHOM_BUDGET")) budget_text = env;
    if (!budget_text.empty()) {
        try {
            cfg.budget = Integer(budget_text);
        } catch (const std::exception&) {
            throw UsageError("malformed budget '" + budget_text + "'");
        }
        if (*cfg.budget < 1) throw UsageError("budget must be positive");
    }

    if (cfg.command == "charsum") {
        cfg.n = parse_range(n_text);
        cfg.m = parse_range(m_text);
        cfg.d = parse_range(d_text);
        if (cfg.n.lo < 1 || cfg.m.lo < 1)
            throw UsageError("charsum needs n >= 1 and m >= 1");
        prime_power_split(cfg.q);
        if (cfg.d.lo < 2)
            throw UsageError("character order " + std::to_string(cfg.d.lo) +
                             " is the trivial character; orders must exceed 1");
        bool any_divides = false;
        for (long d = cfg.d.lo; d <= cfg.d.hi; ++d)
            if ((cfg.q - 1) % d == 0) any_divides = true;
        if (!any_divides)
            throw UsageError("no order in " + d_text + " divides q-1 = " +
                             std::to_string(cfg.q - 1));
    } else if (cfg.command == "homology") {
        cfg.n = parse_range(n_text);
        cfg.m = parse_range(m_text);
        if (cfg.n.lo < 1 || cfg.m.lo < 0)
            throw UsageError("homology needs n >= 1 and m >= 0");
        auto resolve = [&](const RawRoot& r) {
            if (r.order < 1)
                throw UsageError("root-of-unity orders must be positive, got " +
                                 std::to_string(r.order));
            return RootSpec{r.order, r.exp == kExpUnset ? (r.order > 1 ? 1 : 0) : r.exp};
        };
        cfg.p = resolve(rp);
        cfg.q_br = resolve(rq);
        cfg.u = resolve(ru);
        cfg.s = resolve(rs);
    }
    return cfg;
}

int cmd_charsum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return run_charsum(cfg, out, err);
}

int cmd_homology(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return run_homology(cfg, out, err);
}

int cmd_selftest(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    return run_selftest_cmd(cfg, out);
}

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    for (const std::string& a : args)
        if (a == "--help" || a == "-h" || a == "help") {
            std::cout << kUsage;
            return kExitOk;
        }
    if (args.empty()) {
        std::cerr << kUsage;
        return kExitUsage;
    }

    RunConfig cfg;
    try {
        cfg = parse_run_config(args);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!cfg.output_path.empty()) {
        file.open(cfg.output_path);
        if (!file) {
            std::cerr << "error: cannot open output file " << cfg.output_path << "\n";
            return kExitUsage;
        }
        out = &file;
    }

    try {
        int code = 0;
        if (cfg.command == "charsum")
            code = cmd_charsum(cfg, *out, std::cerr);
        else if (cfg.command == "homology")
            code = cmd_homology(cfg, *out, std::cerr);
        else
            code = cmd_selftest(cfg, *out, std::cerr);
        out->flush();
        return code;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerificationFailure;
    }
}

}  // namespace fn
