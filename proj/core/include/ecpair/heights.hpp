#pragma once

#include <cstddef>
#include <vector>

#include "ecpair/curve.hpp"
#include "ecpair/interval.hpp"

namespace ecpair {

struct HeightOptions
{
    /// Target half-width of every canonical height interval.
    double tol = 1e-6;
    /// Coordinates of 2^k P may not exceed this many decimal digits.
    std::size_t max_digits = 20'000'000;
};

/// max(|A|, C^2)
Int naive_height(const RationalPoint & P);
/// log of the naive height
double weil_height(const RationalPoint & P);
/// log max(|p|, |s|) for q = p/s in lowest terms, 0 for q = 0.
double weil_height_rational(const Rational & q);
Interval weil_height_interval(const Rational & q);

/// The constants of Silverman's height-difference bound:
///   -lower <= h^(P) - h_W(P)/2 <= upper
struct SilvermanWindow
{
    Interval lower; // h_W(j)/8 + h_W(Delta)/12 + 0.973
    Interval upper; // h_W(j)/12 + h_W(Delta)/12 + 1.07
};
SilvermanWindow silverman_window(const CurveModel & E);

/// Resultant of the homogeneous numerator and denominator of x(2P). For
/// coprime (X, Z) the gcd of the two values always divides it.
Int duplication_resultant(const CurveModel & E);

struct HeightEstimate
{
    double value = 0.0;
    double error_bound = 0.0;
    /// number of doublings performed (0 for torsion)
    unsigned doublings = 0;

    Interval interval() const { return Interval::around(value, error_bound); }
};

/// h^(P) = 1/2 lim h_W(2^k P) / 4^k, certified by Silverman's window divided
/// by 4^k; torsion points return exactly 0.
HeightEstimate canonical_height(const CurveModel & E, const RationalPoint & P, const HeightOptions & opt = {});

/// <P, Q> = (h^(P + Q) - h^(P) - h^(Q)) / 2
Interval height_pairing(const CurveModel & E, const RationalPoint & P, const RationalPoint & Q,
                        const HeightOptions & opt = {});

using GramMatrix = std::vector<std::vector<Interval>>;

GramMatrix height_gram(const CurveModel & E, const std::vector<RationalPoint> & basis, const HeightOptions & opt = {});
Interval determinant(const GramMatrix & m);
/// n^T G n, i.e. h^(sum n_i P_i)
Interval quadratic_value(const GramMatrix & g, const std::vector<long> & n);

/// |det <P_i, P_j>|; DependentPoints when the interval contains zero.
Interval regulator(const CurveModel & E, const std::vector<RationalPoint> & basis, const HeightOptions & opt = {});
Interval regulator_from_gram(const GramMatrix & g);

/// max over delta in {-1, 0, 1}^r of 2 h^(sum delta_i P_i)
Interval diameter(const CurveModel & E, const std::vector<RationalPoint> & basis, const HeightOptions & opt = {});
Interval diameter_from_gram(const GramMatrix & g);

/// Volume of the unit ball in R^r: pi^(r/2) / Gamma(r/2 + 1).
double omega(unsigned r);
Interval omega_interval(unsigned r);

/// delta(E) = h_W(j)/8 + h_W(Delta)/12 + 5/3
Interval delta_constant(const CurveModel & E);
/// c(E) = |E_tor| Omega_r / sqrt(R)
Interval c_constant(std::size_t torsion_order, unsigned rank, const Interval & regulator);

struct CurveProfile
{
    CurveModel curve;
    std::vector<RationalPoint> basis;
    std::vector<RationalPoint> torsion;
    GramMatrix gram;
    Interval regulator;
    Interval diameter;
    Interval c_E;
    Interval delta_E;
    HeightOptions options;

    unsigned rank() const { return static_cast<unsigned>(basis.size()); }
    std::size_t torsion_order() const { return torsion.size(); }
    /// Regulator in the normalization h^ = lim h_W(nP)/n^2 used by PARI,
    /// Sage and the LMFDB: 2^r times ours.
    Interval bsd_regulator() const;
};

CurveProfile build_profile(const CurveModel & E, const std::vector<RationalPoint> & basis,
                           const HeightOptions & opt = {});

struct EnumeratedPoint
{
    std::vector<long> coefficients;
    std::size_t torsion_index;
    RationalPoint point;
    Interval height;
};

/// Smallest eigenvalue of the Gram matrix, lowered by a perturbation bound
/// covering the interval radii. DegenerateGram if not certainly positive.
double certified_min_eigenvalue(const GramMatrix & g);

/// Every point sum n_i P_i + tau with h^ <= T (points within the height
/// tolerance of T are included). P and -P both appear.
std::vector<EnumeratedPoint> enumerate_points_detailed(const CurveProfile & profile, double T);
std::vector<RationalPoint> enumerate_points_below(const CurveProfile & profile, double T);

/// c(E) (T^(r/2) - r sqrt(d) T^((r-1)/2)); HypothesisFailed unless T > d(E)/4.
Interval count_lower_bound(const CurveProfile & profile, double T);

/// |G| / sqrt(h^(P_m)^m) Omega_m (T^(m/2) - m^2 sqrt(2 h^(P_m)) T^((m-1)/2))
/// for independent points sorted by height; HypothesisFailed unless
/// T > d(points)/4.
Interval count_lower_bound_subset(std::size_t G_order, const std::vector<RationalPoint> & points,
                                  const CurveModel & E, double T, const HeightOptions & opt = {});

} // namespace ecpair
