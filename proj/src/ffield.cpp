#include "fn/ffield.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <tuple>

namespace fn {

namespace {

bool is_prime(long p) {
    if (p < 2)
        return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

long mod_inverse(long a, long p) {
    long r0 = p, r1 = ((a % p) + p) % p, t0 = 0, t1 = 1;
    while (r1 != 0) {
        long q = r0 / r1;
        std::tie(r0, r1) = std::make_tuple(r1, r0 - q * r1);
        std::tie(t0, t1) = std::make_tuple(t1, t0 - q * t1);
    }
    if (r0 != 1)
        throw std::domain_error("not invertible modulo p");
    return ((t0 % p) + p) % p;
}

// --- Raw F_p[x] helpers (coefficients as residues), used for the modulus ---

using PPoly = std::vector<long>;

void pp_trim(PPoly& f) {
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

long pp_degree(const PPoly& f) { return static_cast<long>(f.size()) - 1; }

PPoly pp_rem(long p, PPoly a, const PPoly& b) {
    long db = pp_degree(b);
    long lead_inv = mod_inverse(b.back(), p);
    while (pp_degree(a) >= db) {
        long shift = pp_degree(a) - db;
        long factor = a.back() * lead_inv % p;
        for (long i = 0; i <= db; ++i) {
            size_t at = static_cast<size_t>(shift + i);
            a[at] = ((a[at] - factor * b[static_cast<size_t>(i)]) % p + p) % p;
        }
        pp_trim(a);
    }
    return a;
}

// Extended Euclid: returns u with u * a == gcd(a, b) modulo b-multiples; the
// caller checks the gcd is a unit.
std::pair<PPoly, PPoly> pp_ext_gcd(long p, PPoly a, PPoly b) {
    PPoly u0 = {1}, u1 = {};
    while (pp_degree(b) >= 0) {
        // Divide a by b.
        PPoly q;
        PPoly r = a;
        long db = pp_degree(b);
        long lead_inv = mod_inverse(b.back(), p);
        q.assign(static_cast<size_t>(std::max<long>(pp_degree(r) - db + 1, 0)), 0);
        while (pp_degree(r) >= db) {
            long shift = pp_degree(r) - db;
            long factor = r.back() * lead_inv % p;
            q[static_cast<size_t>(shift)] = factor;
            for (long i = 0; i <= db; ++i) {
                size_t at = static_cast<size_t>(shift + i);
                r[at] = ((r[at] - factor * b[static_cast<size_t>(i)]) % p + p) % p;
            }
            pp_trim(r);
        }
        // (a, b) <- (b, r); (u0, u1) <- (u1, u0 - q*u1).
        PPoly qu1(q.size() + u1.size(), 0);
        for (size_t i = 0; i < q.size(); ++i)
            for (size_t j = 0; j < u1.size(); ++j)
                qu1[i + j] = (qu1[i + j] + q[i] * u1[j]) % p;
        pp_trim(qu1);
        PPoly nu(std::max(u0.size(), qu1.size()), 0);
        for (size_t i = 0; i < nu.size(); ++i) {
            long v0 = i < u0.size() ? u0[i] : 0;
            long v1 = i < qu1.size() ? qu1[i] : 0;
            nu[i] = ((v0 - v1) % p + p) % p;
        }
        pp_trim(nu);
        a = std::move(b);
        b = std::move(r);
        u0 = std::move(u1);
        u1 = std::move(nu);
    }
    return {u0, a};  // u0 * original_a == a (the gcd) mod original_b
}

bool pp_is_irreducible(long p, const PPoly& f) {
    long k = pp_degree(f);
    if (k < 1 || f.back() != 1)
        return false;
    if (k == 1)
        return true;
    // Trial division by every monic polynomial of degree 1..k/2.
    for (long d = 1; 2 * d <= k; ++d) {
        PPoly div(static_cast<size_t>(d + 1), 0);
        div.back() = 1;
        while (true) {
            if (pp_degree(pp_rem(p, f, div)) < 0)
                return false;
            // Odometer on (c_0, ..., c_{d-1}).
            long i = 0;
            while (i < d && div[static_cast<size_t>(i)] == p - 1)
                div[static_cast<size_t>(i++)] = 0;
            if (i == d)
                break;
            ++div[static_cast<size_t>(i)];
        }
    }
    return true;
}

}  // namespace

// --- FqContext -------------------------------------------------------------

FqContext::FqContext(long p, long k) : p_(p), k_(k) { init({}, true); }

FqContext::FqContext(long p, long k, std::vector<long> modulus) : p_(p), k_(k) {
    init(std::move(modulus), false);
}

void FqContext::init(std::vector<long> modulus, bool search) {
    if (!is_prime(p_))
        throw std::invalid_argument("characteristic must be prime");
    if (k_ < 1)
        throw std::invalid_argument("extension degree must be at least 1");

    if (search) {
        if (k_ == 1) {
            modulus = {0, 1};  // placeholder x
        } else {
            // Lexicographically least (c_0, ..., c_{k-1}) making the monic
            // polynomial irreducible; the last coordinate moves fastest.
            modulus.assign(static_cast<size_t>(k_ + 1), 0);
            modulus.back() = 1;
            while (true) {
                if (pp_is_irreducible(p_, modulus))
                    break;
                long i = k_ - 1;
                while (i >= 0 && modulus[static_cast<size_t>(i)] == p_ - 1)
                    modulus[static_cast<size_t>(i--)] = 0;
                if (i < 0)
                    throw std::logic_error("no irreducible modulus found");
                ++modulus[static_cast<size_t>(i)];
            }
        }
    } else {
        for (long& c : modulus)
            c = ((c % p_) + p_) % p_;
        if (pp_degree(modulus) != k_ || modulus.back() != 1)
            throw std::invalid_argument("modulus must be monic of degree k");
        if (k_ > 1 && !pp_is_irreducible(p_, modulus))
            throw std::invalid_argument("modulus is reducible");
    }
    modulus_ = std::move(modulus);

    mpz_ui_pow_ui(q_.get_mpz_t(), static_cast<unsigned long>(p_),
                  static_cast<unsigned long>(k_));
    q_long_ = q_.fits_slong_p() ? q_.get_si() : 0;

    // x^{k+t} mod modulus for t = 0..k-2 (k = 1 needs none).
    if (k_ >= 2) {
        std::vector<long> row(static_cast<size_t>(k_));
        for (long j = 0; j < k_; ++j)
            row[static_cast<size_t>(j)] = (p_ - modulus_[static_cast<size_t>(j)]) % p_;
        reduction_.push_back(row);
        for (long t = 1; t <= k_ - 2; ++t) {
            std::vector<long> next(static_cast<size_t>(k_), 0);
            long top = row.back();
            for (long j = k_ - 1; j >= 1; --j)
                next[static_cast<size_t>(j)] = row[static_cast<size_t>(j - 1)];
            for (long j = 0; j < k_; ++j)
                next[static_cast<size_t>(j)] =
                    (next[static_cast<size_t>(j)] + top * reduction_[0][static_cast<size_t>(j)]) % p_;
            reduction_.push_back(next);
            row = next;
        }
    }

    if (q_long_ >= 2 && q_long_ <= 64) {
        size_t q = static_cast<size_t>(q_long_);
        add_table_.resize(q * q);
        mul_table_.resize(q * q);
        neg_table_.resize(q);
        inv_table_.assign(q, -1);
        for (long a = 0; a < q_long_; ++a) {
            FqElement ea = element_of(a);
            neg_table_[static_cast<size_t>(a)] = code_of(neg(ea));
            for (long b = 0; b < q_long_; ++b) {
                FqElement eb = element_of(b);
                add_table_[index(a, b)] = code_of(add(ea, eb));
                long m = code_of(mul(ea, eb));
                mul_table_[index(a, b)] = m;
                if (m == 1)
                    inv_table_[static_cast<size_t>(a)] = b;
            }
        }
    }
}

long FqContext::q() const {
    if (q_long_ == 0)
        throw std::overflow_error("field cardinality exceeds machine range");
    return q_long_;
}

FqElement FqContext::from_residue(long v) const {
    FqElement e = zero();
    e.coeffs[0] = ((v % p_) + p_) % p_;
    return e;
}

bool FqContext::is_zero(const FqElement& a) const {
    return std::all_of(a.coeffs.begin(), a.coeffs.end(), [](long c) { return c == 0; });
}

FqElement FqContext::add(const FqElement& a, const FqElement& b) const {
    FqElement r = a;
    for (long i = 0; i < k_; ++i)
        r.coeffs[static_cast<size_t>(i)] =
            (r.coeffs[static_cast<size_t>(i)] + b.coeffs[static_cast<size_t>(i)]) % p_;
    return r;
}

FqElement FqContext::sub(const FqElement& a, const FqElement& b) const { return add(a, neg(b)); }

FqElement FqContext::neg(const FqElement& a) const {
    FqElement r = a;
    for (long& c : r.coeffs)
        c = (p_ - c) % p_;
    return r;
}

FqElement FqContext::mul(const FqElement& a, const FqElement& b) const {
    std::vector<long> acc(static_cast<size_t>(2 * k_ - 1), 0);
    for (long i = 0; i < k_; ++i) {
        long ai = a.coeffs[static_cast<size_t>(i)];
        if (ai == 0)
            continue;
        for (long j = 0; j < k_; ++j)
            acc[static_cast<size_t>(i + j)] += ai * b.coeffs[static_cast<size_t>(j)];
    }
    for (long deg = 2 * k_ - 2; deg >= k_; --deg) {
        long c = acc[static_cast<size_t>(deg)] % p_;
        if (c == 0)
            continue;
        const std::vector<long>& row = reduction_[static_cast<size_t>(deg - k_)];
        for (long j = 0; j < k_; ++j)
            acc[static_cast<size_t>(j)] += c * row[static_cast<size_t>(j)];
    }
    FqElement r = zero();
    for (long i = 0; i < k_; ++i)
        r.coeffs[static_cast<size_t>(i)] = ((acc[static_cast<size_t>(i)] % p_) + p_) % p_;
    return r;
}

FqElement FqContext::inverse(const FqElement& a) const {
    if (is_zero(a))
        throw std::domain_error("zero has no inverse");
    PPoly ap = a.coeffs;
    pp_trim(ap);
    auto [u, g] = pp_ext_gcd(p_, ap, modulus_);
    if (pp_degree(g) != 0)
        throw std::logic_error("element not invertible: modulus is reducible");
    long scale = mod_inverse(g[0], p_);
    FqElement r = zero();
    for (size_t i = 0; i < u.size(); ++i)
        r.coeffs[i] = u[i] * scale % p_;
    return r;
}

FqElement FqContext::pow(const FqElement& a, const Integer& e) const {
    if (e < 0)
        throw std::domain_error("negative exponent");
    FqElement base = a, result = one();
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i))
            result = mul(result, base);
        if (i + 1 < bits)
            base = mul(base, base);
    }
    return e == 0 ? one() : result;
}

long FqContext::code_of(const FqElement& a) const {
    q();  // range check
    long code = 0;
    for (long i = k_ - 1; i >= 0; --i)
        code = code * p_ + a.coeffs[static_cast<size_t>(i)];
    return code;
}

FqElement FqContext::element_of(long code) const {
    q();
    FqElement e = zero();
    for (long i = 0; i < k_; ++i) {
        e.coeffs[static_cast<size_t>(i)] = code % p_;
        code /= p_;
    }
    return e;
}

long FqContext::inv_code(long a) const {
    if (!has_code_tables())
        throw std::logic_error("code tables unavailable for this field size");
    if (a == 0)
        throw std::domain_error("zero has no inverse");
    return inv_table_[static_cast<size_t>(a)];
}

std::string FqContext::element_to_string(const FqElement& a) const {
    if (k_ == 1)
        return std::to_string(a.coeffs[0]);
    std::string s = "[";
    for (long i = 0; i < k_; ++i)
        s += (i ? " " : "") + std::to_string(a.coeffs[static_cast<size_t>(i)]);
    return s + "]";
}

// --- Templated polynomial layer ---------------------------------------------

namespace {

struct DigitOps {
    const FqContext* F;
    using Elem = FqElement;
    Elem zero() const { return F->zero(); }
    Elem one() const { return F->one(); }
    Elem from_long(long v) const { return F->from_residue(v); }
    bool is_zero(const Elem& a) const { return F->is_zero(a); }
    Elem add(const Elem& a, const Elem& b) const { return F->add(a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return F->sub(a, b); }
    Elem neg(const Elem& a) const { return F->neg(a); }
    Elem mul(const Elem& a, const Elem& b) const { return F->mul(a, b); }
    Elem inv(const Elem& a) const { return F->inverse(a); }
};

struct CodeOps {
    const FqContext* F;
    using Elem = long;
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_long(long v) const {
        long p = F->characteristic();
        return ((v % p) + p) % p;
    }
    bool is_zero(Elem a) const { return a == 0; }
    Elem add(Elem a, Elem b) const { return F->add_code(a, b); }
    Elem sub(Elem a, Elem b) const { return F->sub_code(a, b); }
    Elem neg(Elem a) const { return F->neg_code(a); }
    Elem mul(Elem a, Elem b) const { return F->mul_code(a, b); }
    Elem inv(Elem a) const { return F->inv_code(a); }
};

template <class Ops>
using TPoly = std::vector<typename Ops::Elem>;

template <class Ops>
void t_trim(const Ops& F, TPoly<Ops>& f) {
    while (!f.empty() && F.is_zero(f.back()))
        f.pop_back();
}

template <class Ops>
long t_degree(const TPoly<Ops>& f) {
    return static_cast<long>(f.size()) - 1;
}

template <class Ops>
TPoly<Ops> t_mul(const Ops& F, const TPoly<Ops>& a, const TPoly<Ops>& b) {
    if (a.empty() || b.empty())
        return {};
    TPoly<Ops> r(a.size() + b.size() - 1, F.zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (F.is_zero(a[i]))
            continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    t_trim(F, r);
    return r;
}

template <class Ops>
std::pair<TPoly<Ops>, TPoly<Ops>> t_divmod(const Ops& F, TPoly<Ops> a, const TPoly<Ops>& b) {
    if (b.empty())
        throw std::invalid_argument("polynomial division by zero");
    long db = t_degree<Ops>(b);
    typename Ops::Elem lead_inv = F.inv(b.back());
    TPoly<Ops> q(static_cast<size_t>(std::max<long>(t_degree<Ops>(a) - db + 1, 0)), F.zero());
    while (t_degree<Ops>(a) >= db) {
        long shift = t_degree<Ops>(a) - db;
        typename Ops::Elem factor = F.mul(a.back(), lead_inv);
        q[static_cast<size_t>(shift)] = factor;
        for (long i = 0; i <= db; ++i) {
            size_t at = static_cast<size_t>(shift + i);
            a[at] = F.sub(a[at], F.mul(factor, b[static_cast<size_t>(i)]));
        }
        t_trim(F, a);
    }
    t_trim(F, q);
    return {std::move(q), std::move(a)};
}

template <class Ops>
TPoly<Ops> t_make_monic(const Ops& F, TPoly<Ops> f) {
    if (f.empty())
        return f;
    typename Ops::Elem s = F.inv(f.back());
    for (auto& c : f)
        c = F.mul(c, s);
    return f;
}

template <class Ops>
TPoly<Ops> t_gcd_monic(const Ops& F, TPoly<Ops> a, TPoly<Ops> b) {
    t_trim(F, a);
    t_trim(F, b);
    if (a.empty() && b.empty())
        throw std::invalid_argument("gcd of two zero polynomials");
    while (!b.empty()) {
        TPoly<Ops> r = t_divmod(F, a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return t_make_monic(F, std::move(a));
}

template <class Ops>
TPoly<Ops> t_derivative(const Ops& F, const TPoly<Ops>& f) {
    TPoly<Ops> r;
    for (size_t i = 1; i < f.size(); ++i)
        r.push_back(F.mul(f[i], F.from_long(static_cast<long>(i))));
    t_trim(F, r);
    return r;
}

template <class Ops>
bool t_is_squarefree(const Ops& F, const TPoly<Ops>& f) {
    if (f.empty())
        throw std::invalid_argument("square-freeness of the zero polynomial");
    TPoly<Ops> d = t_derivative(F, f);
    if (d.empty())
        return t_degree<Ops>(f) == 0;  // constant, or a p-th power
    return t_degree<Ops>(t_gcd_monic<Ops>(F, f, d)) == 0;
}

template <class Ops>
typename Ops::Elem t_eval(const Ops& F, const TPoly<Ops>& f, const typename Ops::Elem& x) {
    typename Ops::Elem acc = F.zero();
    for (size_t i = f.size(); i-- > 0;)
        acc = F.add(F.mul(acc, x), f[i]);
    return acc;
}

// base^e mod m, with base already reduced mod m.
template <class Ops>
TPoly<Ops> t_powmod(const Ops& F, TPoly<Ops> base, const Integer& e, const TPoly<Ops>& m) {
    TPoly<Ops> result = {F.one()};
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0)
        return result;
    for (size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i))
            result = t_divmod(F, t_mul(F, result, base), m).second;
        if (i + 1 < bits)
            base = t_divmod(F, t_mul(F, base, base), m).second;
    }
    return result;
}

// Determinant of the classical Sylvester matrix of monic f (degree n) and
// g (degree m): m rows of f-coefficients from leading to constant, then n
// rows of g-coefficients, each row shifted one column right of the previous.
template <class Ops>
typename Ops::Elem t_sylvester(const Ops& F, const TPoly<Ops>& f, const TPoly<Ops>& g) {
    long n = t_degree<Ops>(f), m = t_degree<Ops>(g);
    long size = n + m;
    std::vector<TPoly<Ops>> mat(static_cast<size_t>(size),
                                TPoly<Ops>(static_cast<size_t>(size), F.zero()));
    for (long r = 0; r < m; ++r)
        for (long t = 0; t <= n; ++t)
            mat[static_cast<size_t>(r)][static_cast<size_t>(r + t)] = f[static_cast<size_t>(n - t)];
    for (long r = 0; r < n; ++r)
        for (long t = 0; t <= m; ++t)
            mat[static_cast<size_t>(m + r)][static_cast<size_t>(r + t)] = g[static_cast<size_t>(m - t)];

    typename Ops::Elem det = F.one();
    bool negate = false;
    for (long col = 0; col < size; ++col) {
        long pivot = -1;
        for (long r = col; r < size; ++r)
            if (!F.is_zero(mat[static_cast<size_t>(r)][static_cast<size_t>(col)])) {
                pivot = r;
                break;
            }
        if (pivot < 0)
            return F.zero();
        if (pivot != col) {
            std::swap(mat[static_cast<size_t>(pivot)], mat[static_cast<size_t>(col)]);
            negate = !negate;
        }
        const typename Ops::Elem& pv = mat[static_cast<size_t>(col)][static_cast<size_t>(col)];
        det = F.mul(det, pv);
        typename Ops::Elem pv_inv = F.inv(pv);
        for (long r = col + 1; r < size; ++r) {
            typename Ops::Elem head = mat[static_cast<size_t>(r)][static_cast<size_t>(col)];
            if (F.is_zero(head))
                continue;
            typename Ops::Elem factor = F.mul(head, pv_inv);
            for (long c = col; c < size; ++c)
                mat[static_cast<size_t>(r)][static_cast<size_t>(c)] =
                    F.sub(mat[static_cast<size_t>(r)][static_cast<size_t>(c)],
                          F.mul(factor, mat[static_cast<size_t>(col)][static_cast<size_t>(c)]));
        }
    }
    return negate ? F.neg(det) : det;
}

void require_monic_positive(const FqContext& F, const FqPoly& f, const char* which) {
    if (poly_degree(F, f) < 1)
        throw std::invalid_argument(std::string(which) + ": degree must be positive");
    if (!is_monic(F, f))
        throw std::invalid_argument(std::string(which) + ": must be monic");
}

}  // namespace

// --- Public polynomial API ---------------------------------------------------

long poly_degree(const FqContext& F, const FqPoly& f) {
    DigitOps ops{&F};
    long d = static_cast<long>(f.coeffs.size()) - 1;
    while (d >= 0 && ops.is_zero(f.coeffs[static_cast<size_t>(d)]))
        --d;
    return d;
}

bool is_monic(const FqContext& F, const FqPoly& f) {
    long d = poly_degree(F, f);
    return d >= 0 && f.coeffs[static_cast<size_t>(d)] == F.one();
}

FqPoly poly_from_residues(const FqContext& F, const std::vector<long>& ascending) {
    FqPoly f;
    for (long c : ascending)
        f.coeffs.push_back(F.from_residue(c));
    DigitOps ops{&F};
    t_trim(ops, f.coeffs);
    return f;
}

FqPoly poly_mul(const FqContext& F, const FqPoly& a, const FqPoly& b) {
    DigitOps ops{&F};
    return FqPoly{t_mul(ops, a.coeffs, b.coeffs)};
}

std::pair<FqPoly, FqPoly> poly_divmod(const FqContext& F, const FqPoly& a, const FqPoly& b) {
    DigitOps ops{&F};
    TPoly<DigitOps> ac = a.coeffs, bc = b.coeffs;
    t_trim(ops, ac);
    t_trim(ops, bc);
    auto [q, r] = t_divmod(ops, std::move(ac), bc);
    return {FqPoly{std::move(q)}, FqPoly{std::move(r)}};
}

FqElement poly_eval(const FqContext& F, const FqPoly& f, const FqElement& x) {
    DigitOps ops{&F};
    return t_eval(ops, f.coeffs, x);
}

FqPoly formal_derivative(const FqContext& F, const FqPoly& f) {
    DigitOps ops{&F};
    return FqPoly{t_derivative(ops, f.coeffs)};
}

FqPoly poly_gcd(const FqContext& F, const FqPoly& f, const FqPoly& g) {
    DigitOps ops{&F};
    return FqPoly{t_gcd_monic(ops, f.coeffs, g.coeffs)};
}

bool is_squarefree(const FqContext& F, const FqPoly& f) {
    DigitOps ops{&F};
    TPoly<DigitOps> fc = f.coeffs;
    t_trim(ops, fc);
    return t_is_squarefree(ops, fc);
}

FqElement sylvester_resultant(const FqContext& F, const FqPoly& f, const FqPoly& g) {
    require_monic_positive(F, f, "resultant lhs");
    require_monic_positive(F, g, "resultant rhs");
    DigitOps ops{&F};
    TPoly<DigitOps> fc = f.coeffs, gc = g.coeffs;
    t_trim(ops, fc);
    t_trim(ops, gc);
    return t_sylvester(ops, fc, gc);
}

std::vector<FqPoly> enumerate_monic(const FqContext& F, long n) {
    if (n < 1)
        throw std::domain_error("enumeration requires degree >= 1");
    long q = F.q();
    std::vector<FqPoly> out;
    std::vector<long> codes(static_cast<size_t>(n), 0);
    while (true) {
        FqPoly f;
        for (long c : codes)
            f.coeffs.push_back(F.element_of(c));
        f.coeffs.push_back(F.one());
        out.push_back(std::move(f));
        // Ascending lexicographic order: the last coordinate moves fastest.
        long i = n - 1;
        while (i >= 0 && codes[static_cast<size_t>(i)] == q - 1)
            codes[static_cast<size_t>(i--)] = 0;
        if (i < 0)
            break;
        ++codes[static_cast<size_t>(i)];
    }
    return out;
}

std::vector<FqPoly> enumerate_monic_squarefree(const FqContext& F, long n) {
    std::vector<FqPoly> out;
    for (FqPoly& f : enumerate_monic(F, n))
        if (is_squarefree(F, f))
            out.push_back(std::move(f));
    return out;
}

CodePoly code_poly(const FqContext& F, const FqPoly& f) {
    CodePoly out;
    for (const FqElement& c : f.coeffs)
        out.push_back(F.code_of(c));
    while (!out.empty() && out.back() == 0)
        out.pop_back();
    return out;
}

FqPoly poly_from_codes(const FqContext& F, const CodePoly& f) {
    FqPoly out;
    for (long c : f)
        out.coeffs.push_back(F.element_of(c));
    DigitOps ops{&F};
    t_trim(ops, out.coeffs);
    return out;
}

bool code_is_squarefree(const FqContext& F, const CodePoly& f) {
    if (!F.has_code_tables())
        throw std::logic_error("code tables unavailable for this field size");
    CodeOps ops{&F};
    CodePoly fc = f;
    t_trim(ops, fc);
    return t_is_squarefree(ops, fc);
}

long code_resultant(const FqContext& F, const CodePoly& f, const CodePoly& g) {
    std::vector<long> scratch;
    return code_resultant(F, f, g, scratch);
}

long code_resultant(const FqContext& F, const CodePoly& f, const CodePoly& g,
                    std::vector<long>& scratch) {
    if (!F.has_code_tables())
        throw std::logic_error("code tables unavailable for this field size");
    long n = static_cast<long>(f.size()) - 1;
    long m = static_cast<long>(g.size()) - 1;
    if (n < 1 || f.back() != 1 || m < 1 || g.back() != 1)
        throw std::invalid_argument("code resultant requires monic inputs of positive degree");

    // Flat row-major Sylvester matrix, eliminated in place with the lookup
    // tables; same layout as t_sylvester.
    long size = n + m;
    scratch.assign(static_cast<size_t>(size * size), 0);
    auto at = [&](long r, long c) -> long& {
        return scratch[static_cast<size_t>(r * size + c)];
    };
    for (long r = 0; r < m; ++r)
        for (long t = 0; t <= n; ++t)
            at(r, r + t) = f[static_cast<size_t>(n - t)];
    for (long r = 0; r < n; ++r)
        for (long t = 0; t <= m; ++t)
            at(m + r, r + t) = g[static_cast<size_t>(m - t)];

    long det = 1;
    bool negate = false;
    for (long col = 0; col < size; ++col) {
        long pivot = -1;
        for (long r = col; r < size; ++r)
            if (at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0)
            return 0;
        if (pivot != col) {
            for (long c = col; c < size; ++c)
                std::swap(at(pivot, c), at(col, c));
            negate = !negate;
        }
        long pv = at(col, col);
        det = F.mul_code(det, pv);
        long pv_inv = F.inv_code(pv);
        for (long r = col + 1; r < size; ++r) {
            long head = at(r, col);
            if (head == 0)
                continue;
            long factor = F.mul_code(head, pv_inv);
            for (long c = col; c < size; ++c)
                at(r, c) = F.sub_code(at(r, c), F.mul_code(factor, at(col, c)));
        }
    }
    return negate ? F.neg_code(det) : det;
}

// --- Splitting-field oracle --------------------------------------------------

namespace {

constexpr long kTotalDegreeCap = 24;
constexpr long kScanLimit = 4096;  // exhaustive root scan below this field size

using CtxKey = std::tuple<long, long, std::vector<long>>;  // (p, k, modulus)

CtxKey key_of(const FqContext& F) { return {F.characteristic(), F.degree(), F.modulus()}; }

std::mutex& oracle_mutex() {
    static std::mutex m;
    return m;
}

// Canonical extension contexts, keyed by (p, K).
const FqContext& extension_context(long p, long K) {
    static std::map<std::pair<long, long>, std::unique_ptr<FqContext>> cache;
    auto [it, inserted] = cache.try_emplace({p, K});
    if (inserted)
        it->second = std::make_unique<FqContext>(p, K);
    return *it->second;
}

// Cache entries hold digit data only, never context pointers: a user-supplied
// context may be destroyed between oracle calls, and any context with the same
// (p, k, modulus) key performs identical arithmetic.
struct Embedding {
    FqElement root;  // a root of the source modulus inside the target field
    std::map<std::vector<long>, long> reverse;  // image digits -> source code
};

FqElement embed_element(const FqContext& to, const FqElement& root, const FqElement& a) {
    // Horner evaluation of the digit polynomial at the modulus root.
    FqElement acc = to.zero();
    for (size_t i = a.coeffs.size(); i-- > 0;) {
        acc = to.mul(acc, root);
        acc = to.add(acc, to.from_residue(a.coeffs[i]));
    }
    return acc;
}

void next_element(const FqContext& F, FqElement& a) {
    for (long i = 0; i < F.degree(); ++i) {
        size_t at = static_cast<size_t>(i);
        if (a.coeffs[at] + 1 < F.characteristic()) {
            ++a.coeffs[at];
            return;
        }
        a.coeffs[at] = 0;
    }
}

// All roots of the squarefree completely-split monic polynomial L.
void split_linear_factors(const FqContext& C, TPoly<DigitOps> L, std::vector<FqElement>& out) {
    DigitOps ops{&C};
    long deg = t_degree<DigitOps>(L);
    if (deg <= 0)
        return;
    if (deg == 1) {
        out.push_back(C.neg(L[0]));  // monic x + c
        return;
    }
    if (C.cardinality() <= kScanLimit) {
        FqElement x = C.zero();
        for (Integer i = 0; i < C.cardinality(); ++i, next_element(C, x))
            if (C.is_zero(t_eval(ops, L, x)))
                out.push_back(x);
        return;
    }
    // Gcd with a separating polynomial: (x+c)^{(|C|-1)/2} - 1 in odd
    // characteristic, the Frobenius trace of c*x in characteristic 2.
    FqElement c = C.zero();
    while (true) {
        TPoly<DigitOps> h;
        if (C.characteristic() != 2) {
            TPoly<DigitOps> shifted = {c, C.one()};
            Integer e = (C.cardinality() - 1) / 2;
            h = t_powmod(ops, std::move(shifted), e, L);
            if (h.empty())
                h = {C.neg(C.one())};
            else
                h[0] = C.sub(h[0], C.one());
            t_trim(ops, h);
        } else {
            TPoly<DigitOps> term = {C.zero(), c};
            term = t_divmod(ops, std::move(term), L).second;
            TPoly<DigitOps> trace = term;
            for (long i = 1; i < C.degree(); ++i) {
                term = t_divmod(ops, t_mul(ops, term, term), L).second;
                trace.resize(std::max(trace.size(), term.size()), C.zero());
                for (size_t j = 0; j < term.size(); ++j)
                    trace[j] = C.add(trace[j], term[j]);
                t_trim(ops, trace);
            }
            h = std::move(trace);
        }
        if (!h.empty()) {
            TPoly<DigitOps> g = t_gcd_monic(ops, L, h);
            long dg = t_degree<DigitOps>(g);
            if (dg > 0 && dg < deg) {
                split_linear_factors(C, g, out);
                split_linear_factors(C, t_divmod(ops, L, g).first, out);
                return;
            }
        }
        next_element(C, c);
    }
}

// Distinct irreducible factor degrees of f over F (degrees only).
std::vector<long> distinct_factor_degrees(const FqContext& F, TPoly<DigitOps> f) {
    DigitOps ops{&F};
    t_trim(ops, f);
    // Strip p-th-power structure: when f' = 0, f(x) = h(x)^p with h obtained
    // by taking q/p-th powers of the coefficients of f(x^{1/p}); h has the
    // same roots, hence the same factor degrees.
    while (t_degree<DigitOps>(f) > 0 && t_derivative(ops, f).empty()) {
        long p = F.characteristic();
        Integer e = F.cardinality() / p;
        TPoly<DigitOps> h;
        for (size_t i = 0; i < f.size(); i += static_cast<size_t>(p))
            h.push_back(F.pow(f[i], e));
        f = std::move(h);
    }
    TPoly<DigitOps> v = t_divmod(ops, f, t_gcd_monic(ops, f, t_derivative(ops, f))).first;
    v = t_make_monic(ops, std::move(v));

    std::vector<long> degrees;
    TPoly<DigitOps> frob = {F.zero(), F.one()};  // x^{q^d} mod v, starting at d = 0
    for (long d = 1; t_degree<DigitOps>(v) > 0; ++d) {
        if (2 * d > t_degree<DigitOps>(v)) {
            degrees.push_back(t_degree<DigitOps>(v));  // remainder is irreducible
            break;
        }
        frob = t_divmod(ops, frob, v).second;
        frob = t_powmod(ops, std::move(frob), F.cardinality(), v);
        TPoly<DigitOps> diff = frob;
        diff.resize(std::max<size_t>(diff.size(), 2), F.zero());
        diff[1] = F.sub(diff[1], F.one());
        t_trim(ops, diff);
        if (diff.empty()) {  // everything left has degree dividing d
            degrees.push_back(d);
            break;
        }
        TPoly<DigitOps> g = t_gcd_monic(ops, v, diff);
        if (t_degree<DigitOps>(g) > 0) {
            degrees.push_back(d);
            v = t_divmod(ops, v, g).first;
        }
    }
    if (degrees.empty())
        degrees.push_back(1);
    return degrees;
}

struct SplitData {
    long ext;                       // splitting degree over the base field
    std::vector<FqElement> roots;   // with multiplicity, inside the extension
};

// The context the roots of a SplitData live in.
const FqContext& split_context(const FqContext& F, long ext) {
    return ext == 1 ? F : extension_context(F.characteristic(), F.degree() * ext);
}

const Embedding& embedding_between(const FqContext& from, const FqContext& to) {
    static std::map<std::pair<CtxKey, CtxKey>, std::unique_ptr<Embedding>> cache;
    auto [it, inserted] = cache.try_emplace({key_of(from), key_of(to)});
    if (!inserted)
        return *it->second;

    auto emb = std::make_unique<Embedding>();
    // The modulus has prime-field coefficients, so it embeds trivially; any
    // one of its roots in `to` defines the field embedding.
    TPoly<DigitOps> mod_poly;
    for (long c : from.modulus())
        mod_poly.push_back(to.from_residue(c));
    std::vector<FqElement> roots;
    split_linear_factors(to, mod_poly, roots);
    if (roots.empty())
        throw std::logic_error("modulus has no root in the extension");
    emb->root = *std::min_element(roots.begin(), roots.end(),
                                  [](const FqElement& a, const FqElement& b) {
                                      return a.coeffs < b.coeffs;
                                  });
    if (from.degree() > 1 && from.cardinality() <= kScanLimit) {
        FqElement a = from.zero();
        for (Integer i = 0; i < from.cardinality(); ++i, next_element(from, a))
            emb->reverse[embed_element(to, emb->root, a).coeffs] = from.code_of(a);
    }
    it->second = std::move(emb);
    return *it->second;
}

FqElement embed_into(const FqContext& from, const FqContext& to, const FqElement& a) {
    if (key_of(from) == key_of(to))
        return a;
    return embed_element(to, embedding_between(from, to).root, a);
}

const SplitData& split_data(const FqContext& F, const FqPoly& f) {
    static std::map<std::pair<CtxKey, std::vector<std::vector<long>>>,
                    std::unique_ptr<SplitData>> cache;
    std::vector<std::vector<long>> poly_key;
    for (const FqElement& c : f.coeffs)
        poly_key.push_back(c.coeffs);
    auto [it, inserted] = cache.try_emplace({key_of(F), poly_key});
    if (!inserted)
        return *it->second;

    auto data = std::make_unique<SplitData>();
    std::vector<long> degrees = distinct_factor_degrees(F, f.coeffs);
    long ext = 1;
    for (long d : degrees)
        ext = std::lcm(ext, d);
    data->ext = ext;
    if (F.degree() * ext > kTotalDegreeCap)
        throw std::domain_error("splitting field exceeds the total degree cap");
    const FqContext& C = split_context(F, ext);

    DigitOps ops{&C};
    TPoly<DigitOps> w;
    for (const FqElement& c : f.coeffs)
        w.push_back(embed_into(F, C, c));
    t_trim(ops, w);

    // Distinct roots, then multiplicities by repeated division.
    TPoly<DigitOps> x_power = t_powmod(ops, {C.zero(), C.one()}, C.cardinality(), w);
    TPoly<DigitOps> diff = std::move(x_power);
    diff.resize(std::max<size_t>(diff.size(), 2), C.zero());
    diff[1] = C.sub(diff[1], C.one());
    t_trim(ops, diff);
    std::vector<FqElement> distinct;
    if (diff.empty()) {
        // x^{|C|} = x mod w: w splits into distinct linear factors already.
        split_linear_factors(C, t_make_monic(ops, w), distinct);
    } else {
        split_linear_factors(C, t_gcd_monic(ops, w, diff), distinct);
    }

    for (const FqElement& root : distinct) {
        TPoly<DigitOps> lin = {C.neg(root), C.one()};
        TPoly<DigitOps> cur = w;
        while (true) {
            auto [quot, rem] = t_divmod(ops, cur, lin);
            if (!rem.empty())
                break;
            data->roots.push_back(root);
            cur = std::move(quot);
        }
    }
    if (static_cast<long>(data->roots.size()) != t_degree<DigitOps>(w))
        throw std::logic_error("splitting field failed to capture every root");
    it->second = std::move(data);
    return *it->second;
}

FqElement recover_base_element(const FqContext& base, const FqContext& C, const FqElement& v) {
    if (key_of(base) == key_of(C))
        return v;
    if (base.degree() == 1) {
        for (size_t i = 1; i < v.coeffs.size(); ++i)
            if (v.coeffs[i] != 0)
                throw std::logic_error("value does not lie in the prime field");
        return base.from_residue(v.coeffs[0]);
    }
    const Embedding& emb = embedding_between(base, C);
    auto it = emb.reverse.find(v.coeffs);
    if (it == emb.reverse.end())
        throw std::logic_error("value does not lie in the base field");
    return base.element_of(it->second);
}

}  // namespace

FqElement resultant_oracle(const FqContext& F, const FqPoly& f, const FqPoly& g) {
    require_monic_positive(F, f, "resultant lhs");
    require_monic_positive(F, g, "resultant rhs");
    std::lock_guard<std::mutex> lock(oracle_mutex());

    const SplitData& sf = split_data(F, f);
    const SplitData& sg = split_data(F, g);
    long ext = std::lcm(sf.ext, sg.ext);
    if (F.degree() * ext > kTotalDegreeCap)
        throw std::domain_error("splitting field exceeds the total degree cap");
    const FqContext& C = split_context(F, ext);

    std::vector<FqElement> alphas, betas;
    for (const FqElement& r : sf.roots)
        alphas.push_back(embed_into(split_context(F, sf.ext), C, r));
    for (const FqElement& r : sg.roots)
        betas.push_back(embed_into(split_context(F, sg.ext), C, r));

    FqElement prod = C.one();
    for (const FqElement& a : alphas)
        for (const FqElement& b : betas)
            prod = C.mul(prod, C.sub(a, b));
    return recover_base_element(F, C, prod);
}

}  // namespace fn
