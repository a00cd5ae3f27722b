#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ecpair/curve.hpp"
#include "ecpair/heights.hpp"
#include "ecpair/interval.hpp"

namespace ecpair {

/// One side condition of a theorem. margin is signed, in log units where the
/// condition compares sizes, and positive when the condition holds.
struct HypothesisCheck
{
    std::string name;
    bool satisfied = false;
    double margin = 0.0;
};

struct BoundResult
{
    /// Present only when every hypothesis is certified.
    std::optional<Interval> value;
    std::vector<HypothesisCheck> hypotheses;

    /// First failing hypothesis, or empty.
    std::string failure() const;
};

/// T(D, u) = log(D / (1 + |u|)^2) / 4 - delta(E); DomainError if D <= (1 + |u|)^2.
Interval T_general(const CurveProfile & profile, const Int & D, const Int & u);
/// T_E(t) = log(D_E(t) / (t + 1)^2) / 4 - delta(E)
Interval T_family(const CurveProfile & profile, const Int & t);

/// (c(E)/2) (T^(r/2) - r sqrt(d(E)) T^((r-1)/2))
Interval lattice_bound(const CurveProfile & profile, const Interval & T);
/// c(E) / (2 sqrt(12^r)), the leading constant in front of log(D)^(r/2)
Interval asymptotic_constant(const CurveProfile & profile);

/// Lower bound for h(-D) from pairing against an integral Q on E_{-D}. Checks
///   (1 + |u|)^2 exp(4 delta(E) + d(E)) < D <= (1 + |u|)^2 u^2 / v^4
/// with the lower inequality strict.
BoundResult thm_general_bound(const CurveProfile & profile, const TwistPoint & Q);

/// Lower bound for h(-D_E(t)) with Q_t = (-t, 1). Checks T_E(t) >= d(E)/4 and
///   (t + 1)^2 exp(4 delta(E) + d(E)) <= D_E(t) <= t^2 (t + 1)^2.
BoundResult thm_family_bound(const CurveProfile & profile, const Int & t);

/// GGZ bound log(D)/7000 * prod over primes p | D, p != D of
/// (1 - floor(2 sqrt p)/(p + 1)). DomainError for D <= 1.
Interval ggz_bound(const Int & D, std::uint64_t factor_bound = 1'000'000'000ULL);

/// The same from a known factorization of D.
Interval ggz_bound(const Int & D, const std::vector<PrimePower> & factors);

/// The Euler-type product above, exactly.
Rational ggz_product(const Int & D, const std::vector<PrimePower> & factors);

/// E_{a,b}: y^2 = x^3 - a^2 x + b^2 with candidates (0, b), (-a, b), or with
/// cube set E_{a,b^3}: y^2 = x^3 - a^2 x + b^6 with candidates (0, b^3),
/// (-a, b^3), (-b^2, a b).
struct FamilyCurve
{
    CurveModel curve;
    Int a, b;
    bool cube = false;
    std::vector<RationalPoint> candidates;
    /// regulator interval of the candidates; absent if it could not be computed
    std::optional<Interval> regulator;
    bool independent = false;
    HeightOptions options;
};

FamilyCurve family_curve(const Int & a, const Int & b, bool cube, const HeightOptions & opt = {});

/// pi / (12 h^(P_max)) for the rank-2 family and
/// (4 pi / 3) / (24 sqrt 3 h^(P_max)^(3/2)) for the cube family, where P_max
/// is the candidate of largest canonical height. DependentAtThisSize when the
/// candidates are not certified independent.
Interval family_constant(const FamilyCurve & family);

/// family_constant * log(D)^(r/2), the leading term of the family bound
Interval family_bound(const FamilyCurve & family, const Int & D);

} // namespace ecpair
