#include "fn/intpoly.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace fn {

IntPoly::IntPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::constant(const Integer& c) {
    if (c == 0) return IntPoly();
    return IntPoly(std::vector<Integer>{c});
}

IntPoly IntPoly::monomial(long degree, const Integer& c) {
    if (degree < 0) throw std::domain_error("monomial of negative degree");
    if (c == 0) return IntPoly();
    std::vector<Integer> v(static_cast<size_t>(degree) + 1, Integer(0));
    v.back() = c;
    return IntPoly(std::move(v));
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Integer IntPoly::coeff(long k) const {
    if (k < 0 || k >= static_cast<long>(c_.size())) return Integer(0);
    return c_[static_cast<size_t>(k)];
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<Integer> v(std::max(c_.size(), o.c_.size()), Integer(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    std::vector<Integer> v(std::max(c_.size(), o.c_.size()), Integer(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] -= o.c_[i];
    return IntPoly(std::move(v));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly();
    std::vector<Integer> v(c_.size() + o.c_.size() - 1, Integer(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return IntPoly(std::move(v));
}

IntPoly IntPoly::divexact_monic(const IntPoly& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
    if (divisor.c_.back() != 1) throw std::domain_error("divisor is not monic");
    if (is_zero()) return IntPoly();
    if (degree() < divisor.degree()) throw std::domain_error("inexact polynomial division");

    std::vector<Integer> rem = c_;
    std::vector<Integer> quot(static_cast<size_t>(degree() - divisor.degree()) + 1, Integer(0));
    for (long k = degree() - divisor.degree(); k >= 0; --k) {
        Integer lead = rem[static_cast<size_t>(k + divisor.degree())];
        quot[static_cast<size_t>(k)] = lead;
        if (lead == 0) continue;
        for (long j = 0; j <= divisor.degree(); ++j)
            rem[static_cast<size_t>(k + j)] -= lead * divisor.c_[static_cast<size_t>(j)];
    }
    for (const Integer& r : rem)
        if (r != 0) throw std::domain_error("inexact polynomial division");
    return IntPoly(std::move(quot));
}

Integer IntPoly::eval(const Integer& x) const {
    Integer acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Rational IntPoly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rational(*it);
    return acc;
}

std::string IntPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        Integer a = c_[i];
        if (first) {
            if (a < 0) out << "-";
        } else {
            out << (a < 0 ? " - " : " + ");
        }
        Integer mag = abs(a);
        if (i == 0) {
            out << mag.get_str();
        } else {
            if (mag != 1) out << mag.get_str() << "*";
            out << var;
            if (i > 1) out << "^" << i;
        }
        first = false;
    }
    return out.str();
}

IntPoly gaussian_binomial(long a, long b) {
    if (a < 0) throw std::domain_error("gaussian_binomial with negative upper index");
    if (b < 0 || b > a) return IntPoly();

    static std::map<std::pair<long, long>, IntPoly> cache;
    static std::mutex cache_mutex;
    std::lock_guard<std::mutex> lock(cache_mutex);

    // Fill the Pascal triangle rows up to a, reusing everything already cached.
    for (long n = 0; n <= a; ++n) {
        for (long k = 0; k <= n; ++k) {
            auto key = std::make_pair(n, k);
            if (cache.count(key)) continue;
            if (k == 0 || k == n) {
                cache.emplace(key, IntPoly::constant(1));
            } else {
                const IntPoly& left = cache.at({n - 1, k - 1});
                const IntPoly& right = cache.at({n - 1, k});
                cache.emplace(key, left + IntPoly::monomial(k, 1) * right);
            }
        }
    }
    return cache.at({a, b});
}

}  // namespace fn
