#include "fn/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fn {

namespace {

// ---------------------------------------------------------------------------
// Per-order data: Phi_d and the reduced powers x^k mod Phi_d for 0 <= k < d.
// ---------------------------------------------------------------------------

struct CycContext {
    long order = 1;
    long phi = 1;
    // powers[k] has length phi and holds x^k mod Phi_d (integer coefficients,
    // since Phi_d is monic over Z).
    std::vector<std::vector<Integer>> powers;
};

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

std::map<long, IntPoly>& phi_cache_unlocked() {
    static std::map<long, IntPoly> cache;
    return cache;
}

const IntPoly& cyclotomic_polynomial_unlocked(long d) {
    auto& cache = phi_cache_unlocked();
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;

    // x^d - 1 divided by the product of Phi_e over proper divisors e of d.
    IntPoly numerator = IntPoly::monomial(d, 1) - IntPoly::constant(1);
    IntPoly divisor = IntPoly::constant(1);
    for (long e = 1; e < d; ++e)
        if (d % e == 0) divisor = divisor * cyclotomic_polynomial_unlocked(e);
    return cache.emplace(d, numerator.divexact_monic(divisor)).first->second;
}

std::shared_ptr<const CycContext> context_for(long d) {
    if (d < 1) throw std::domain_error("cyclotomic order must be positive");
    std::lock_guard<std::mutex> lock(registry_mutex());
    static std::map<long, std::shared_ptr<const CycContext>> registry;
    auto it = registry.find(d);
    if (it != registry.end()) return it->second;

    const IntPoly& phi_poly = cyclotomic_polynomial_unlocked(d);
    auto ctx = std::make_shared<CycContext>();
    ctx->order = d;
    ctx->phi = phi_poly.degree();

    // Iterate p_{k+1} = x * p_k mod Phi_d, using x^phi = -(lower part of Phi).
    std::vector<Integer> p(static_cast<size_t>(ctx->phi), Integer(0));
    p[0] = 1;
    ctx->powers.push_back(p);
    for (long k = 1; k < d; ++k) {
        std::vector<Integer> next(static_cast<size_t>(ctx->phi), Integer(0));
        Integer carry = p.back();
        for (long i = ctx->phi - 1; i >= 1; --i) next[static_cast<size_t>(i)] = p[static_cast<size_t>(i - 1)];
        if (carry != 0)
            for (long i = 0; i < ctx->phi; ++i)
                next[static_cast<size_t>(i)] -= carry * phi_poly.coeff(i);
        ctx->powers.push_back(next);
        p = std::move(next);
    }
    registry.emplace(d, ctx);
    return registry.at(d);
}

long mod_positive(long a, long d) {
    long r = a % d;
    return r < 0 ? r + d : r;
}

// ---------------------------------------------------------------------------
// Minimal dense polynomial arithmetic over Q, used only for inversion.
// ---------------------------------------------------------------------------

using RatPoly = std::vector<Rational>;

void rp_trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

long rp_degree(const RatPoly& p) { return static_cast<long>(p.size()) - 1; }

// r -= c * x^shift * s
void rp_submul(RatPoly& r, const Rational& c, long shift, const RatPoly& s) {
    if (r.size() < s.size() + static_cast<size_t>(shift)) r.resize(s.size() + static_cast<size_t>(shift), Rational(0));
    for (size_t i = 0; i < s.size(); ++i) r[i + static_cast<size_t>(shift)] -= c * s[i];
    rp_trim(r);
}

// Division with remainder: returns quotient, leaves the remainder in a.
RatPoly rp_divmod(RatPoly& a, const RatPoly& b) {
    RatPoly quot;
    if (rp_degree(a) >= rp_degree(b)) quot.assign(static_cast<size_t>(rp_degree(a) - rp_degree(b)) + 1, Rational(0));
    while (rp_degree(a) >= rp_degree(b) && !a.empty()) {
        long shift = rp_degree(a) - rp_degree(b);
        Rational c = a.back() / b.back();
        quot[static_cast<size_t>(shift)] = c;
        rp_submul(a, c, shift, b);
    }
    return quot;
}

}  // namespace

long euler_phi(long d) {
    if (d < 1) throw std::domain_error("euler_phi of non-positive argument");
    long result = d;
    long n = d;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

const IntPoly& cyclotomic_polynomial(long d) {
    if (d < 1) throw std::domain_error("cyclotomic order must be positive");
    std::lock_guard<std::mutex> lock(registry_mutex());
    return cyclotomic_polynomial_unlocked(d);
}

Cyclotomic::Cyclotomic(long order) : order_(order) {
    auto ctx = context_for(order);
    c_.assign(static_cast<size_t>(ctx->phi), Rational(0));
}

Cyclotomic Cyclotomic::from_rational(long order, const Rational& r) {
    Cyclotomic z(order);
    z.c_[0] = r;
    return z;
}

Cyclotomic Cyclotomic::root_power(long order, long exp) {
    auto ctx = context_for(order);
    Cyclotomic z(order);
    const auto& pw = ctx->powers[static_cast<size_t>(mod_positive(exp, order))];
    for (size_t i = 0; i < pw.size(); ++i) z.c_[i] = Rational(pw[i]);
    return z;
}

bool Cyclotomic::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rational Cyclotomic::rational_value() const {
    if (!is_rational()) throw std::domain_error("cyclotomic element is not rational");
    return c_[0];
}

namespace {
void require_same_order(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order() != b.order())
        throw std::invalid_argument("cyclotomic order mismatch: " + std::to_string(a.order()) + " vs " +
                                    std::to_string(b.order()));
}
}  // namespace

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    require_same_order(*this, o);
    Cyclotomic z(order_);
    for (size_t i = 0; i < c_.size(); ++i) z.c_[i] = c_[i] + o.c_[i];
    return z;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const {
    require_same_order(*this, o);
    Cyclotomic z(order_);
    for (size_t i = 0; i < c_.size(); ++i) z.c_[i] = c_[i] - o.c_[i];
    return z;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic z(order_);
    for (size_t i = 0; i < c_.size(); ++i) z.c_[i] = -c_[i];
    return z;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    require_same_order(*this, o);
    auto ctx = context_for(order_);
    const long phi = ctx->phi;
    std::vector<Rational> conv(static_cast<size_t>(2 * phi - 1), Rational(0));
    for (long i = 0; i < phi; ++i) {
        if (c_[static_cast<size_t>(i)] == 0) continue;
        for (long j = 0; j < phi; ++j) {
            if (o.c_[static_cast<size_t>(j)] == 0) continue;
            conv[static_cast<size_t>(i + j)] += c_[static_cast<size_t>(i)] * o.c_[static_cast<size_t>(j)];
        }
    }
    Cyclotomic z(order_);
    for (long k = 0; k < 2 * phi - 1; ++k) {
        const Rational& ck = conv[static_cast<size_t>(k)];
        if (ck == 0) continue;
        if (k < phi) {
            z.c_[static_cast<size_t>(k)] += ck;
        } else {
            const auto& pw = ctx->powers[static_cast<size_t>(k % order_)];
            for (long i = 0; i < phi; ++i)
                if (pw[static_cast<size_t>(i)] != 0) z.c_[static_cast<size_t>(i)] += ck * Rational(pw[static_cast<size_t>(i)]);
        }
    }
    return z;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    require_same_order(*this, o);
    return c_ == o.c_;
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero cyclotomic element");
    // Extended Euclid on (f, Phi_d) over Q; Phi_d irreducible makes the gcd a
    // nonzero constant, and the Bezout coefficient of f is the inverse.
    const IntPoly& phi_poly = cyclotomic_polynomial(order_);
    RatPoly r0(c_.begin(), c_.end());
    rp_trim(r0);
    RatPoly r1;
    for (long i = 0; i <= phi_poly.degree(); ++i) r1.push_back(Rational(phi_poly.coeff(i)));
    RatPoly s0{Rational(1)}, s1;  // s tracks the coefficient of f

    while (!r1.empty()) {
        RatPoly rem = r0;
        RatPoly quot = rp_divmod(rem, r1);
        // s_next = s0 - quot * s1
        RatPoly s_next = s0;
        for (size_t i = 0; i < quot.size(); ++i)
            if (quot[i] != 0) rp_submul(s_next, quot[i], static_cast<long>(i), s1);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s_next);
    }
    // r0 = gcd = constant; inverse = s0 / r0, reduced mod Phi (degree < phi).
    if (rp_degree(r0) != 0) throw std::logic_error("cyclotomic inversion hit a non-constant gcd");
    Cyclotomic z(order_);
    for (size_t i = 0; i < s0.size(); ++i) {
        if (i >= z.c_.size()) throw std::logic_error("cyclotomic inverse exceeded basis degree");
        z.c_[i] = s0[i] / r0[0];
    }
    return z;
}

Cyclotomic Cyclotomic::galois(long a) const {
    long am = mod_positive(a, order_);
    if (std::gcd(am, order_) != 1)
        throw std::domain_error("galois exponent not coprime to the order");
    auto ctx = context_for(order_);
    Cyclotomic z(order_);
    for (long i = 0; i < ctx->phi; ++i) {
        const Rational& ci = c_[static_cast<size_t>(i)];
        if (ci == 0) continue;
        const auto& pw = ctx->powers[static_cast<size_t>(mod_positive(i * am, order_))];
        for (long j = 0; j < ctx->phi; ++j)
            if (pw[static_cast<size_t>(j)] != 0) z.c_[static_cast<size_t>(j)] += ci * Rational(pw[static_cast<size_t>(j)]);
    }
    return z;
}

Cyclotomic Cyclotomic::conj() const {
    if (order_ <= 2) return *this;
    return galois(order_ - 1);
}

Cyclotomic Cyclotomic::embed_into(long new_order) const {
    if (new_order % order_ != 0)
        throw std::domain_error("embedding target order is not a multiple of the source order");
    if (new_order == order_) return *this;
    long ratio = new_order / order_;
    auto ctx = context_for(new_order);
    Cyclotomic z(new_order);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        const auto& pw = ctx->powers[static_cast<size_t>(mod_positive(static_cast<long>(i) * ratio, new_order))];
        for (long j = 0; j < ctx->phi; ++j)
            if (pw[static_cast<size_t>(j)] != 0) z.c_[static_cast<size_t>(j)] += c_[i] * Rational(pw[static_cast<size_t>(j)]);
    }
    return z;
}

std::complex<double> Cyclotomic::to_complex() const {
    std::complex<double> acc(0.0, 0.0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        double angle = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(order_);
        acc += c_[i].get_d() * std::polar(1.0, angle);
    }
    return acc;
}

std::string Cyclotomic::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) out << " + ";
        out << to_fraction_string(c_[i]);
        if (i > 0) out << "*z" << order_ << "^" << i;
        first = false;
    }
    return out.str();
}

Cyclotomic cyc_arith(const Cyclotomic& a, const Cyclotomic& b, CycOp op) {
    switch (op) {
        case CycOp::add: return a + b;
        case CycOp::mul: return a * b;
        case CycOp::inv: return a.inverse();
    }
    throw std::logic_error("unknown cyclotomic operation");
}

std::complex<double> cyc_embed(const Cyclotomic& a) { return a.to_complex(); }

}  // namespace fn
