#include "ecpair/curve.hpp"

#include <algorithm>
#include <set>

#include "ecpair/errors.hpp"

namespace ecpair {

CurveModel::CurveModel(Int a4, Int a6)
    : a4_(std::move(a4))
    , a6_(std::move(a6))
{
    Int core = 4 * a4_ * a4_ * a4_ + 27 * a6_ * a6_;
    if (core == 0)
        raise(ErrorKind::SingularCurve, "4a4^3 + 27a6^2 = 0 for " + str());
    disc_ = -16 * core;
    Int c4 = 4 * a4_;
    j_ = Rational(Int(-1728) * c4 * c4 * c4, disc_);
    j_.canonicalize();
}

Int CurveModel::f(const Int & x) const
{
    return x * x * x + a4_ * x + a6_;
}

std::string CurveModel::str() const
{
    std::string s = "y^2 = x^3";
    if (a4_ != 0)
        s += (a4_ < 0 ? " - " : " + ") + Int(abs(a4_)).get_str() + "x";
    if (a6_ != 0)
        s += (a6_ < 0 ? " - " : " + ") + Int(abs(a6_)).get_str();
    return s;
}

// ---------------------------------------------------------------------------

RationalPoint RationalPoint::infinity()
{
    return RationalPoint();
}

RationalPoint RationalPoint::integral(Int x, Int y)
{
    RationalPoint P;
    P.infinity_ = false;
    P.A_ = std::move(x);
    P.B_ = std::move(y);
    P.C_ = 1;
    return P;
}

RationalPoint RationalPoint::from_triple(Int A, Int B, Int C)
{
    if (C == 0)
        raise(ErrorKind::InvalidArgument, "C = 0 in point triple");
    if (C == 1 || C == -1)
        return integral(std::move(A), C == 1 ? std::move(B) : Int(-B));
    Rational x(A, C * C);
    Rational y(B, C * C * C);
    x.canonicalize();
    y.canonicalize();
    return from_affine(x, y);
}

RationalPoint RationalPoint::from_affine(const Rational & x, const Rational & y)
{
    Int s;
    if (!is_square(x.get_den(), &s))
        raise(ErrorKind::InvalidArgument, "x denominator is not a square: " + x.get_str());
    Int s3 = s * s * s;
    if (y.get_den() != s3)
        raise(ErrorKind::InvalidArgument, "y denominator does not match x: " + y.get_str());
    RationalPoint P;
    P.infinity_ = false;
    P.A_ = x.get_num();
    P.B_ = y.get_num();
    P.C_ = s;
    return P;
}

Rational RationalPoint::x() const
{
    if (infinity_)
        raise(ErrorKind::InfinitePoint, "x of point at infinity");
    Rational q(A_, C_ * C_);
    q.canonicalize();
    return q;
}

Rational RationalPoint::y() const
{
    if (infinity_)
        raise(ErrorKind::InfinitePoint, "y of point at infinity");
    Rational q(B_, C_ * C_ * C_);
    q.canonicalize();
    return q;
}

RationalPoint RationalPoint::operator-() const
{
    RationalPoint P = *this;
    if (!infinity_)
        P.B_ = -B_;
    return P;
}

std::string RationalPoint::str() const
{
    if (infinity_)
        return "O";
    if (C_ == 1)
        return "(" + A_.get_str() + ", " + B_.get_str() + ")";
    return "(" + x().get_str() + ", " + y().get_str() + ")";
}

bool operator==(const RationalPoint & a, const RationalPoint & b)
{
    if (a.infinity_ || b.infinity_)
        return a.infinity_ == b.infinity_;
    return a.A_ == b.A_ && a.B_ == b.B_ && a.C_ == b.C_;
}

std::strong_ordering operator<=>(const RationalPoint & a, const RationalPoint & b)
{
    if (a.infinity_ || b.infinity_) {
        if (a.infinity_ == b.infinity_)
            return std::strong_ordering::equal;
        return a.infinity_ ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    for (auto [x, y] : {std::pair{&a.A_, &b.A_}, std::pair{&a.B_, &b.B_}, std::pair{&a.C_, &b.C_}}) {
        int c = cmp(*x, *y);
        if (c != 0)
            return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------

bool on_curve(const CurveModel & E, const RationalPoint & P)
{
    if (P.is_infinity())
        return true;
    Int C2 = P.C() * P.C();
    Int C4 = C2 * C2;
    return P.B() * P.B() == P.A() * P.A() * P.A() + E.a4() * P.A() * C4 + E.a6() * C4 * C2;
}

namespace {

void require_on_curve(const CurveModel & E, const RationalPoint & P)
{
    if (!on_curve(E, P))
        raise(ErrorKind::NotOnCurve, P.str() + " is not on " + E.str());
}

RationalPoint add_unchecked(const CurveModel & E, const RationalPoint & P, const RationalPoint & Q)
{
    if (P.is_infinity())
        return Q;
    if (Q.is_infinity())
        return P;
    Rational x1 = P.x(), y1 = P.y(), x2 = Q.x(), y2 = Q.y();
    Rational lam;
    if (x1 == x2) {
        if (y1 == -y2)
            return RationalPoint::infinity();
        lam = (3 * x1 * x1 + Rational(E.a4())) / (2 * y1);
    } else {
        lam = (y2 - y1) / (x2 - x1);
    }
    Rational x3 = lam * lam - x1 - x2;
    Rational y3 = lam * (x1 - x3) - y1;
    return RationalPoint::from_affine(x3, y3);
}

} // namespace

RationalPoint point_add(const CurveModel & E, const RationalPoint & P, const RationalPoint & Q)
{
    require_on_curve(E, P);
    require_on_curve(E, Q);
    return add_unchecked(E, P, Q);
}

RationalPoint point_sub(const CurveModel & E, const RationalPoint & P, const RationalPoint & Q)
{
    return point_add(E, P, -Q);
}

RationalPoint point_scale(const CurveModel & E, const Int & n, const RationalPoint & P)
{
    require_on_curve(E, P);
    Int k = abs(n);
    RationalPoint base = n < 0 ? -P : P;
    RationalPoint acc = RationalPoint::infinity();
    for (std::size_t bit = bit_length(k); bit-- > 0;) {
        acc = add_unchecked(E, acc, acc);
        if (mpz_tstbit(k.get_mpz_t(), bit))
            acc = add_unchecked(E, acc, base);
    }
    return acc;
}

// ---------------------------------------------------------------------------

TwistPoint::TwistPoint(Int u, Int v, Int w, Int D)
    : u_(std::move(u))
    , v_(std::move(v))
    , w_(std::move(w))
    , D_(std::move(D))
{
    if (v_ == 0)
        raise(ErrorKind::InvalidArgument, "twist point with v = 0");
    if (w_ <= 0)
        raise(ErrorKind::InvalidArgument, "twist point needs w > 0");
    if (D_ <= 0)
        raise(ErrorKind::InvalidArgument, "twist parameter D must be positive");
    Int w2 = w_ * w_;
    Int gu = gcd(u_, w2);
    Int gv = gcd(v_, w2 * w_);
    denominators_ok_ = mpz_divisible_p(D_.get_mpz_t(), gu.get_mpz_t()) && mpz_divisible_p(D_.get_mpz_t(), gv.get_mpz_t());
    if (mpz_odd_p(D_.get_mpz_t()) && mpz_odd_p(v_.get_mpz_t())) {
        u_ *= 4;
        v_ *= 8;
        w_ *= 2;
        rescaled_ = true;
    }
}

std::string TwistPoint::str() const
{
    if (w_ == 1)
        return "(" + u_.get_str() + ", " + v_.get_str() + ") on E_{-" + D_.get_str() + "}";
    return "(" + u_.get_str() + "/" + w_.get_str() + "^2, " + v_.get_str() + "/" + w_.get_str() + "^3) on E_{-" +
           D_.get_str() + "}";
}

bool twist_contains(const CurveModel & E, const TwistPoint & Q)
{
    const Int & u = Q.u();
    Int w2 = Q.w() * Q.w();
    Int w4 = w2 * w2;
    Int rhs = 4 * (u * u * u + E.a4() * u * w4 + E.a6() * w4 * w2);
    return -Q.D() * Q.v() * Q.v() == rhs;
}

Int family_discriminant(const CurveModel & E, const Int & t)
{
    Int D = 4 * (t * t * t + E.a4() * t - E.a6());
    if (D <= 0)
        raise(ErrorKind::NonPositiveDiscriminant, "D_E(" + t.get_str() + ") = " + D.get_str());
    return D;
}

TwistPoint family_twist_point(const CurveModel & E, const Int & t)
{
    return TwistPoint(-t, 1, 1, family_discriminant(E, t));
}

// ---------------------------------------------------------------------------

std::optional<int> torsion_point_order(const CurveModel & E, const RationalPoint & P)
{
    require_on_curve(E, P);
    if (P.is_infinity())
        return 1;
    // Lutz-Nagell: torsion points on an integral model are integral with
    // y = 0 or y^2 | 4a4^3 + 27a6^2; every multiple of a torsion point is
    // torsion, hence integral as well.
    if (P.C() != 1)
        return std::nullopt;
    Int core = 4 * E.a4() * E.a4() * E.a4() + 27 * E.a6() * E.a6();
    if (P.B() != 0 && !mpz_divisible_p(core.get_mpz_t(), Int(P.B() * P.B()).get_mpz_t()))
        return std::nullopt;
    RationalPoint R = P;
    for (int n = 2; n <= 12; ++n) {
        R = add_unchecked(E, R, P);
        if (R.is_infinity())
            return n;
        if (R.C() != 1)
            return std::nullopt;
    }
    return std::nullopt;
}

std::vector<Int> integer_roots_depressed_cubic(const Int & a, const Int & b)
{
    auto g = [&](const Int & x) { return Int(x * x * x + a * x + b); };
    Int R = 1 + std::max(Int(abs(a)), Int(abs(b)));

    struct Piece
    {
        Int lo, hi;
        bool increasing;
    };
    std::vector<Piece> pieces;
    if (a >= 0) {
        pieces.push_back({-R, R, true});
    } else {
        Int q = (-a) / 3;
        Int s = isqrt(q);
        bool exact = mpz_divisible_ui_p(a.get_mpz_t(), 3) && s * s == q;
        Int ceil_c = exact ? s : Int(s + 1);
        pieces.push_back({-R, -ceil_c, true});
        pieces.push_back({-s, s, false});
        pieces.push_back({ceil_c, R, true});
    }

    std::set<Int> roots;
    for (const auto & pc : pieces) {
        if (pc.lo > pc.hi)
            continue;
        // first x in [lo, hi] where g has reached the sign of its end value
        Int lo = pc.lo, hi = pc.hi;
        auto past = [&](const Int & x) { return pc.increasing ? g(x) >= 0 : g(x) <= 0; };
        if (!past(hi))
            continue;
        while (lo < hi) {
            Int mid = lo + (hi - lo) / 2;
            if (past(mid))
                hi = mid;
            else
                lo = mid + 1;
        }
        if (g(lo) == 0)
            roots.insert(lo);
    }
    return {roots.begin(), roots.end()};
}

std::vector<RationalPoint> torsion_points(const CurveModel & E)
{
    std::set<RationalPoint> found;
    found.insert(RationalPoint::infinity());

    for (const auto & x : integer_roots_depressed_cubic(E.a4(), E.a6()))
        found.insert(RationalPoint::integral(x, 0));

    Int core = abs(Int(4 * E.a4() * E.a4() * E.a4() + 27 * E.a6() * E.a6()));
    // all y > 0 with y^2 | core
    std::vector<Int> ys{1};
    for (const auto & pp : factorize(core)) {
        std::vector<Int> next;
        for (const auto & y : ys) {
            Int pk = 1;
            for (unsigned e = 0; 2 * e <= pp.exponent; ++e) {
                next.push_back(y * pk);
                pk *= pp.prime;
            }
        }
        ys = std::move(next);
    }
    for (const auto & y : ys) {
        for (const auto & x : integer_roots_depressed_cubic(E.a4(), Int(E.a6() - y * y))) {
            for (const auto & P : {RationalPoint::integral(x, y), RationalPoint::integral(x, -y)})
                if (torsion_point_order(E, P))
                    found.insert(P);
        }
    }
    // roots found via y = 0 are 2-torsion by construction
    return {found.begin(), found.end()};
}

std::size_t torsion_order(const CurveModel & E)
{
    return torsion_points(E).size();
}

std::vector<RationalPoint> integral_points(const CurveModel & E, const Int & x_bound)
{
    std::vector<RationalPoint> out;
    Int y;
    for (Int x = -x_bound; x <= x_bound; ++x) {
        Int fx = E.f(x);
        if (fx >= 0 && is_square(fx, &y))
            out.push_back(RationalPoint::integral(x, y));
    }
    return out;
}

} // namespace ecpair
