#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ecpair/arith.hpp"

namespace ecpair {

/// Short Weierstrass curve y^2 = x^3 + a4 x + a6 over the rationals.
class CurveModel
{
  public:
    /// Throws SingularCurve when 4 a4^3 + 27 a6^2 = 0.
    CurveModel(Int a4, Int a6);

    const Int & a4() const { return a4_; }
    const Int & a6() const { return a6_; }

    /// Delta(E) = -16 (4 a4^3 + 27 a6^2)
    const Int & discriminant() const { return disc_; }
    /// j(E) = -1728 (4 a4)^3 / Delta(E), in lowest terms
    const Rational & j_invariant() const { return j_; }

    /// f(x) = x^3 + a4 x + a6
    Int f(const Int & x) const;

    std::string str() const;

    friend bool operator==(const CurveModel & a, const CurveModel & b)
    {
        return a.a4_ == b.a4_ && a.a6_ == b.a6_;
    }

  private:
    Int a4_, a6_, disc_;
    Rational j_;
};

inline CurveModel curve_new(Int a4, Int a6)
{
    return CurveModel(std::move(a4), std::move(a6));
}

/// A point of E(Q): either the point at infinity or (A/C^2, B/C^3) with
/// C > 0 and gcd(A, C) = gcd(B, C) = 1. The triple is unique per point, so
/// equality of points is equality of triples.
class RationalPoint
{
  public:
    static RationalPoint infinity();
    static RationalPoint integral(Int x, Int y);
    /// Accepts any C != 0 and brings the triple to lowest terms. Throws
    /// InvalidArgument if the resulting x, y denominators are not C^2, C^3.
    static RationalPoint from_triple(Int A, Int B, Int C);
    static RationalPoint from_affine(const Rational & x, const Rational & y);

    bool is_infinity() const { return infinity_; }
    const Int & A() const { return A_; }
    const Int & B() const { return B_; }
    const Int & C() const { return C_; }
    Rational x() const;
    Rational y() const;

    RationalPoint operator-() const;

    std::string str() const;

    friend bool operator==(const RationalPoint & a, const RationalPoint & b);
    friend std::strong_ordering operator<=>(const RationalPoint & a, const RationalPoint & b);

  private:
    RationalPoint() = default;
    bool infinity_ = true;
    Int A_{0}, B_{1}, C_{1};
};

bool on_curve(const CurveModel & E, const RationalPoint & P);

RationalPoint point_add(const CurveModel & E, const RationalPoint & P, const RationalPoint & Q);
RationalPoint point_sub(const CurveModel & E, const RationalPoint & P, const RationalPoint & Q);
RationalPoint point_scale(const CurveModel & E, const Int & n, const RationalPoint & P);
inline RationalPoint point_scale(const CurveModel & E, long n, const RationalPoint & P)
{
    return point_scale(E, Int(n), P);
}

/// Point (u/w^2, v/w^3) on the twist -D (y/2)^2 = x^3 + a4 x + a6, kept in
/// the representation it was given (not reduced to lowest terms).
class TwistPoint
{
  public:
    /// Validates v != 0, w > 0, D > 0. When D is odd and v is odd the triple
    /// is rescaled to (4u, 8v, 2w), which names the same affine point.
    TwistPoint(Int u, Int v, Int w, Int D);

    const Int & u() const { return u_; }
    const Int & v() const { return v_; }
    const Int & w() const { return w_; }
    const Int & D() const { return D_; }
    bool rescaled() const { return rescaled_; }

    /// gcd(u, w^2) | D and gcd(v, w^3) | D, checked on the triple as supplied.
    bool denominators_divide_D() const { return denominators_ok_; }

    std::string str() const;

  private:
    Int u_, v_, w_, D_;
    bool rescaled_ = false;
    bool denominators_ok_ = false;
};

/// -D v^2 = 4 (u^3 + a4 u w^4 + a6 w^6), the twist equation with
/// denominators cleared.
bool twist_contains(const CurveModel & E, const TwistPoint & Q);

/// D_E(t) = 4 (t^3 + a4 t - a6); NonPositiveDiscriminant when <= 0.
Int family_discriminant(const CurveModel & E, const Int & t);
/// Q_t = (-t, 1) on E_{-D_E(t)}.
TwistPoint family_twist_point(const CurveModel & E, const Int & t);

/// Order n <= 12 with nP = O, or nullopt when P has no such order.
std::optional<int> torsion_point_order(const CurveModel & E, const RationalPoint & P);
/// All of E_tor(Q), including the point at infinity, sorted.
std::vector<RationalPoint> torsion_points(const CurveModel & E);
std::size_t torsion_order(const CurveModel & E);

/// Integral points with |x| <= x_bound and y >= 0, sorted by x.
std::vector<RationalPoint> integral_points(const CurveModel & E, const Int & x_bound);

/// Integer roots of x^3 + a x + b, ascending.
std::vector<Int> integer_roots_depressed_cubic(const Int & a, const Int & b);

} // namespace ecpair
