#include "ecpair/bounds.hpp"

#include <cmath>
#include <numbers>

#include "ecpair/errors.hpp"

namespace ecpair {

namespace {

Interval log_interval(const Int & n)
{
    LogValue l = log_abs(n);
    return Interval::around(l.value, l.error);
}

Interval pi_interval()
{
    return Interval::around(std::numbers::pi, 1e-15);
}

HypothesisCheck check(std::string name, const Interval & margin, bool strict)
{
    bool ok = strict ? margin.certainly_positive() : margin.lo() >= 0.0;
    return {std::move(name), ok, margin.value()};
}

// log D - log((1 + |u|)^2) - 4 delta - d
Interval lower_margin(const CurveProfile & profile, const Int & D, const Int & one_plus_u)
{
    return log_interval(D) - Interval(2.0) * log_interval(one_plus_u) - Interval(4.0) * profile.delta_E -
           profile.diameter;
}

// log(bound) - log(D) with the sign decided exactly
HypothesisCheck upper_check(std::string name, const Int & D, const Int & num, const Int & den)
{
    // D <= num / den
    bool ok = D * den <= num;
    double margin = 0.0;
    if (num != 0)
        margin = log_abs(num).value - log_abs(den).value - log_abs(D).value;
    else
        margin = -HUGE_VAL;
    return {std::move(name), ok, margin};
}

BoundResult finish(const CurveProfile & profile, BoundResult res, const Interval & T)
{
    for (const auto & h : res.hypotheses)
        if (!h.satisfied)
            return res;
    res.value = lattice_bound(profile, T);
    return res;
}

} // namespace

std::string BoundResult::failure() const
{
    for (const auto & h : hypotheses)
        if (!h.satisfied)
            return h.name;
    return {};
}

Interval T_general(const CurveProfile & profile, const Int & D, const Int & u)
{
    Int base = 1 + abs(u);
    if (D <= base * base)
        raise(ErrorKind::DomainError, "D must exceed (1 + |u|)^2 = " + Int(base * base).get_str());
    return Interval(0.25) * (log_interval(D) - Interval(2.0) * log_interval(base)) - profile.delta_E;
}

Interval T_family(const CurveProfile & profile, const Int & t)
{
    Int D = family_discriminant(profile.curve, t);
    Int base = t + 1;
    if (D <= base * base)
        raise(ErrorKind::DomainError, "D_E(t) must exceed (t + 1)^2");
    return Interval(0.25) * (log_interval(D) - Interval(2.0) * log_interval(base)) - profile.delta_E;
}

Interval lattice_bound(const CurveProfile & profile, const Interval & T)
{
    const unsigned r = profile.rank();
    Interval main = pow(T, r / 2.0);
    Interval corr = Interval(static_cast<double>(r)) * sqrt(profile.diameter) * pow(T, (r - 1) / 2.0);
    return Interval(0.5) * profile.c_E * (main - corr);
}

Interval asymptotic_constant(const CurveProfile & profile)
{
    return profile.c_E / (Interval(2.0) * sqrt(Interval(std::pow(12.0, profile.rank()))));
}

BoundResult thm_general_bound(const CurveProfile & profile, const TwistPoint & Q)
{
    BoundResult res;
    const Int & D = Q.D();
    Int base = 1 + abs(Q.u());
    res.hypotheses.push_back({"integral twist point", Q.w() == 1, Q.w() == 1 ? 0.0 : -1.0});
    res.hypotheses.push_back(
        check("D > (1+|u|)^2 exp(4 delta + d)", lower_margin(profile, D, base), /*strict=*/true));
    Int v2 = Q.v() * Q.v();
    res.hypotheses.push_back(upper_check("D <= (1+|u|)^2 u^2 / v^4", D, Int(base * base * Q.u() * Q.u()), Int(v2 * v2)));
    if (!res.failure().empty())
        return res;
    return finish(profile, std::move(res), T_general(profile, D, Q.u()));
}

BoundResult thm_family_bound(const CurveProfile & profile, const Int & t)
{
    BoundResult res;
    Int D;
    try {
        D = family_discriminant(profile.curve, t);
    } catch (const Error &) {
        res.hypotheses.push_back({"D_E(t) > 0", false, -HUGE_VAL});
        return res;
    }
    Int base = t + 1;
    if (D <= base * base || base <= 0) {
        res.hypotheses.push_back({"D_E(t) > (t+1)^2", false, -HUGE_VAL});
        return res;
    }
    Interval T = T_family(profile, t);
    res.hypotheses.push_back(check("T_E(t) >= d/4", T - Interval(0.25) * profile.diameter, /*strict=*/false));
    res.hypotheses.push_back(check("D >= (t+1)^2 exp(4 delta + d)", lower_margin(profile, D, base), /*strict=*/false));
    res.hypotheses.push_back(upper_check("D <= t^2 (t+1)^2", D, Int(t * t * base * base), Int(1)));
    return finish(profile, std::move(res), T);
}

Rational ggz_product(const Int & D, const std::vector<PrimePower> & factors)
{
    if (D <= 1)
        raise(ErrorKind::DomainError, "GGZ bound needs D > 1");
    Rational prod = 1;
    for (const auto & pp : factors) {
        if (pp.prime == D)
            continue;
        Int fl = isqrt(Int(4 * pp.prime)); // floor(2 sqrt p)
        prod *= Rational(1) - ratio(fl, pp.prime + 1);
    }
    prod.canonicalize();
    return prod;
}

Interval ggz_bound(const Int & D, std::uint64_t factor_bound)
{
    if (D <= 1)
        raise(ErrorKind::DomainError, "GGZ bound needs D > 1");
    return ggz_bound(D, factorize(D, factor_bound));
}

Interval ggz_bound(const Int & D, const std::vector<PrimePower> & factors)
{
    Rational prod = ggz_product(D, factors);
    double p = prod.get_d();
    Interval product = Interval::around(p, std::abs(p) * 1e-15);
    return log_interval(D) * product / Interval(7000.0);
}

FamilyCurve family_curve(const Int & a, const Int & b, bool cube, const HeightOptions & opt)
{
    if (a < 1 || b < 1)
        raise(ErrorKind::InvalidArgument, "family parameters must be positive");
    Int b3 = b * b * b;
    Int a6 = cube ? Int(b3 * b3) : Int(b * b);
    FamilyCurve fam{CurveModel(Int(-a * a), a6), a, b, cube, {}, std::nullopt, false, opt};
    Int y = cube ? b3 : b;
    fam.candidates.push_back(RationalPoint::integral(0, y));
    fam.candidates.push_back(RationalPoint::integral(-a, y));
    if (cube)
        fam.candidates.push_back(RationalPoint::integral(Int(-b * b), Int(a * b)));
    for (const auto & P : fam.candidates)
        if (!on_curve(fam.curve, P))
            raise(ErrorKind::NotOnCurve, P.str() + " is not on " + fam.curve.str());
    try {
        fam.regulator = regulator(fam.curve, fam.candidates, opt);
        fam.independent = true;
    } catch (const Error & e) {
        if (e.kind() != ErrorKind::DependentPoints)
            throw;
        fam.independent = false;
    }
    return fam;
}

Interval family_constant(const FamilyCurve & family)
{
    if (!family.independent)
        raise(ErrorKind::DependentAtThisSize,
              "candidate points on " + family.curve.str() + " are not certified independent");
    Interval hmax(0.0);
    for (const auto & P : family.candidates)
        hmax = max(hmax, canonical_height(family.curve, P, family.options).interval());
    if (!family.cube)
        return pi_interval() / (Interval(12.0) * hmax);
    Interval omega3 = Interval(4.0) * pi_interval() / Interval(3.0);
    return omega3 / (Interval(24.0) * sqrt(Interval(3.0)) * pow(hmax, 1.5));
}

Interval family_bound(const FamilyCurve & family, const Int & D)
{
    double half_rank = family.cube ? 1.5 : 1.0;
    return family_constant(family) * pow(log_interval(D), half_rank);
}

} // namespace ecpair
