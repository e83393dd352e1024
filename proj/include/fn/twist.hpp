// Parameters of the rank-one local system: three units p, q, s of one
// cyclotomic field (s may also be any nonzero rational, e.g. 2, embedded as a
// rational element of the field).
//
// A positive crossing of two plain strands scales by q, a crossing that moves
// a marked strand left scales by s, and one that moves a marked strand right
// scales by p/s.  The boundary maps consume these through letter_scalars(),
// which negates all three: the differential's alternating sign per crossing
// is folded into the letters, so a walk with the negated scalars equals
// (-1)^(word length) times the walk with the plain ones.  In particular at
// p = q = s = 1 the negated walk of a shuffle lift produces exactly the sign
// of the shuffle, and the twisted boundary degenerates to the untwisted one.

#ifndef FN_TWIST_HPP
#define FN_TWIST_HPP

#include <stdexcept>

#include "fn/cyclotomic.hpp"
#include "fn/shuffle.hpp"

namespace fn {

struct TwistParams {
    Cyclotomic p, q, s;

    TwistParams(Cyclotomic p_, Cyclotomic q_, Cyclotomic s_)
        : p(std::move(p_)), q(std::move(q_)), s(std::move(s_)) {
        if (p.order() != q.order() || p.order() != s.order())
            throw std::invalid_argument("twist parameters must share one cyclotomic order");
        if (p.is_zero() || q.is_zero() || s.is_zero())
            throw std::invalid_argument("twist parameters must be units");
    }

    long order() const { return p.order(); }

    // p = zeta^pe, q = zeta^qe, s = zeta^se for zeta of the given order.
    static TwistParams from_root_powers(long order, long pe, long qe, long se) {
        return TwistParams(Cyclotomic::root_power(order, pe), Cyclotomic::root_power(order, qe),
                           Cyclotomic::root_power(order, se));
    }

    static TwistParams untwisted() { return from_root_powers(1, 0, 0, 0); }

    // Per-crossing scalars with the boundary sign folded in.
    UnitScalars letter_scalars() const {
        Cyclotomic ps = p * s.inverse();
        return UnitScalars{-q, -s, -ps};
    }

    Cyclotomic one() const { return Cyclotomic::from_rational(order(), Rational(1)); }
};

}  // namespace fn

#endif
