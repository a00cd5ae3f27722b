#pragma once

#include <vector>

#include "ecpair/curve.hpp"
#include "ecpair/qforms.hpp"

namespace ecpair {

/// Quantities attached to a pair (P, Q) in E(Q) x E_{-D}(Q):
///   alpha = |A w^2 - u C^2|, G = gcd(alpha, C^6 v^2), Hg = gcd(2 w^3 B, C^3 v)
/// and a multiplier ell making F_{P,Q} integral.
struct PairingContext
{
    CurveModel curve;
    RationalPoint P;
    TwistPoint Q;
    Int alpha;
    Int G;
    Int Hg;
    Int ell;
    /// |2 C^3 v|; valid multipliers form one class modulo this step and
    /// neighbouring classes give forms related by X -> X + Y
    Int ell_step;

    const Int & D() const { return Q.D(); }
    /// alpha / G, the leading coefficient of F_{P,Q}
    Int leading() const;
    bool even_branch() const;
};

/// Solves (alpha/G) k = -2w^3B/Hg - C^3 v D/Hg (mod 2C^3v/Hg) and sets ell to
/// the least nonnegative valid Hg k. When alpha/G is even the congruence only
/// fixes ell modulo C^3 v, and just one of the two lifts modulo 2 C^3 v makes
/// the Y^2 coefficient integral; that lift is chosen.
PairingContext pairing_context(const CurveModel & E, const RationalPoint & P, const TwistPoint & Q);

/// True when ell = Hg k for some k solving the congruence above and the
/// resulting form is integral.
bool ell_is_valid(const PairingContext & ctx, const Int & ell);
/// Same context with another valid multiplier; InvalidArgument otherwise.
PairingContext with_ell(PairingContext ctx, const Int & ell);

/// F_{P,Q} = (a, b, c) with a = alpha/G, b = (2w^3B + ell a)/(C^3 v),
/// c = (b^2 + D)/(4a); every property (integrality, discriminant -D,
/// positive definiteness, parity of b) is certified before returning.
QuadraticForm pair_form(const PairingContext & ctx);

/// Coefficients of F_{P,Q} for an arbitrary ell, without the validity check.
/// Throws IntegralityFailure if they are not integers.
QuadraticForm pair_form_with_ell(const PairingContext & ctx, const Int & ell);

/// a1 != a2 and a1 a2 < D/4: two forms of discriminant -D with these leading
/// coefficients are then guaranteed inequivalent.
bool inequivalence_guard(const Rational & a1, const Rational & a2, const Int & D);

/// Reduced representatives of F_{P,Q} over the given points, deduplicated and
/// sorted. Points with alpha = 0 (and O) are skipped.
std::vector<QuadraticForm> pair_point_set(const CurveModel & E, const TwistPoint & Q,
                                          const std::vector<RationalPoint> & points);

} // namespace ecpair
