#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ecpair/errors.hpp"
#include "ecpair/heights.hpp"
#include "oracles.hpp"

using namespace ecpair;

namespace {

HeightOptions with_tol(double tol)
{
    HeightOptions o;
    o.tol = tol;
    return o;
}

bool overlaps(const Interval & a, const Interval & b)
{
    return a.lo() <= b.hi() && b.lo() <= a.hi();
}

const CurveModel kRank3(-16, 1);
const std::vector<RationalPoint> kBasis3{RationalPoint::integral(0, 1), RationalPoint::integral(-2, 5),
                                         RationalPoint::integral(4, 1)};
const CurveModel kRank2(0, 17);
const std::vector<RationalPoint> kBasis2{RationalPoint::integral(-2, 3), RationalPoint::integral(-1, 4)};

std::vector<std::vector<double>> midpoints(const GramMatrix & g)
{
    std::vector<std::vector<double>> m(g.size(), std::vector<double>(g.size()));
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            m[i][j] = g[i][j].value();
    return m;
}

} // namespace

TEST_SUITE("heights")
{
    TEST_CASE("naive and Weil heights")
    {
        auto P = RationalPoint::from_triple(-946, -34249, 19);
        CHECK(naive_height(P) == 946);
        CHECK(weil_height(P) == doctest::Approx(std::log(946.0)));
        CHECK(naive_height(RationalPoint::from_triple(1, 1, 4)) == 16);
        CHECK(weil_height_rational(Rational(-3, 7)) == doctest::Approx(std::log(7.0)));
        CHECK(weil_height_rational(Rational(0)) == 0.0);
    }

    TEST_CASE("torsion has height exactly zero")
    {
        CurveModel E(0, 1);
        for (const auto & T : torsion_points(E)) {
            if (T.is_infinity())
                continue;
            auto h = canonical_height(E, T);
            CHECK(h.value == 0.0);
            CHECK(h.error_bound == 0.0);
        }
        CHECK_THROWS_AS(canonical_height(E, RationalPoint::infinity()), Error);
    }

    TEST_CASE("quadratic scaling")
    {
        const double tol = 1e-5;
        for (const auto & P : kBasis3) {
            auto h1 = canonical_height(kRank3, P, with_tol(tol));
            auto h2 = canonical_height(kRank3, point_scale(kRank3, 2L, P), with_tol(tol));
            CHECK(std::abs(h2.value - 4 * h1.value) <= 2 * tol);
            // 3P is not on the doubling chain of P
            auto h3 = canonical_height(kRank3, point_scale(kRank3, 3L, P), with_tol(tol));
            CHECK(overlaps(h3.interval(), Interval(9.0) * h1.interval()));
            CHECK(h1.error_bound <= tol);
        }
    }

    TEST_CASE("parallelogram law")
    {
        auto o = with_tol(1e-5);
        const auto & P = kBasis2[0];
        const auto & Q = kBasis2[1];
        Interval lhs = canonical_height(kRank2, point_add(kRank2, P, Q), o).interval() +
                       canonical_height(kRank2, point_sub(kRank2, P, Q), o).interval();
        Interval rhs = Interval(2.0) * (canonical_height(kRank2, P, o).interval() + canonical_height(kRank2, Q, o).interval());
        CHECK(overlaps(lhs, rhs));
    }

    TEST_CASE("Silverman window brackets the difference")
    {
        auto win = silverman_window(kRank3);
        for (auto P : integral_points(kRank3, 100)) {
            if (P.B() == 0)
                continue;
            P = point_scale(kRank3, 5L, P);
            double diff = canonical_height(kRank3, P, with_tol(1e-4)).value - weil_height(P) / 2;
            CHECK(diff >= -win.lower.hi() - 1e-4);
            CHECK(diff <= win.upper.hi() + 1e-4);
        }
    }

    TEST_CASE("resultant bounds the duplication gcd")
    {
        // gcd(F, G) divides Res(F, G) for coprime (X, Z)
        Int res = duplication_resultant(kRank3);
        CHECK(res != 0);
        for (long x = -30; x <= 30; ++x)
            for (long z : {1L, 4L, 9L}) {
                if (gcd(Int(x), Int(z)) != 1)
                    continue;
                Int X(x), Z(z);
                Int F = (X * X + 16 * Z * Z) * (X * X + 16 * Z * Z) - 8 * X * Z * Z * Z;
                Int G = 4 * Z * (X * X * X - 16 * X * Z * Z + Z * Z * Z);
                Int g = gcd(F, G);
                CHECK(mpz_divisible_p(res.get_mpz_t(), g.get_mpz_t()));
            }
    }

    TEST_CASE("iteration overflow")
    {
        HeightOptions o;
        o.tol = 1e-9;
        o.max_digits = 1000;
        try {
            canonical_height(kRank3, kBasis3[0], o);
            FAIL("expected IterationOverflow");
        } catch (const Error & e) {
            CHECK(e.kind() == ErrorKind::IterationOverflow);
        }
    }

    TEST_CASE("height pairing")
    {
        auto o = with_tol(1e-5);
        const auto & P = kBasis2[0];
        const auto & Q = kBasis2[1];
        Interval pq = height_pairing(kRank2, P, Q, o);
        Interval qp = height_pairing(kRank2, Q, P, o);
        CHECK(overlaps(pq, qp));
        Interval hp = canonical_height(kRank2, P, o).interval();
        CHECK(overlaps(height_pairing(kRank2, P, P, o), hp));
        CHECK(overlaps(height_pairing(kRank2, P, -P, o), -hp));
    }

    TEST_CASE("regulator")
    {
        auto o = with_tol(1e-5);
        Interval single = regulator(kRank2, {kBasis2[0]}, o);
        CHECK(overlaps(single, canonical_height(kRank2, kBasis2[0], o).interval()));
        try {
            regulator(kRank2, {kBasis2[0], point_scale(kRank2, 2L, kBasis2[0])}, o);
            FAIL("expected DependentPoints");
        } catch (const Error & e) {
            CHECK(e.kind() == ErrorKind::DependentPoints);
        }
        // (0,1), (4,1), (-4,1) are dependent on y^2 = x^3 - 16x + 1
        CHECK_THROWS_AS(regulator(kRank3,
                                  {RationalPoint::integral(0, 1), RationalPoint::integral(4, 1),
                                   RationalPoint::integral(-4, 1)},
                                  o),
                        Error);
        // a change of basis with determinant 1 keeps the regulator
        auto P1 = kBasis2[0], P2 = point_add(kRank2, kBasis2[1], point_scale(kRank2, 3L, kBasis2[0]));
        CHECK(overlaps(regulator(kRank2, {P1, P2}, o), regulator(kRank2, kBasis2, o)));
        // index 2 multiplies it by 4
        CHECK(overlaps(regulator(kRank2, {point_scale(kRank2, 2L, kBasis2[0]), kBasis2[1]}, o),
                       Interval(4.0) * regulator(kRank2, kBasis2, o)));
    }

    TEST_CASE("rank 3 regulator near 0.930 in the PARI normalization")
    {
        CurveProfile prof = build_profile(kRank3, kBasis3, with_tol(1e-6));
        CHECK(prof.rank() == 3);
        CHECK(prof.torsion_order() == 1);
        CHECK(std::abs(prof.bsd_regulator().value() - 0.930) < 0.01);
        CHECK(prof.bsd_regulator().value() == doctest::Approx(8 * prof.regulator.value()));
    }

    TEST_CASE("diameter and constants")
    {
        CHECK(omega(1) == doctest::Approx(2.0));
        CHECK(omega(2) == doctest::Approx(std::numbers::pi));
        CHECK(omega(3) == doctest::Approx(4 * std::numbers::pi / 3));
        CHECK(omega_interval(3).contains(4 * std::numbers::pi / 3));

        auto o = with_tol(1e-5);
        CurveProfile prof = build_profile(kRank2, kBasis2, o);
        // brute-force maximum over sign vectors
        double best = 0;
        for (int a = -1; a <= 1; ++a)
            for (int b = -1; b <= 1; ++b) {
                if (a == 0 && b == 0)
                    continue;
                auto P = point_add(kRank2, point_scale(kRank2, long(a), kBasis2[0]), point_scale(kRank2, long(b), kBasis2[1]));
                best = std::max(best, 2 * canonical_height(kRank2, P, o).value);
            }
        CHECK(prof.diameter.value() == doctest::Approx(best).epsilon(1e-4));

        Interval c = c_constant(1, 2, prof.regulator);
        CHECK(c.value() == doctest::Approx(std::numbers::pi / std::sqrt(prof.regulator.value())));

        // delta = h(j)/8 + h(Delta)/12 + 5/3; j = 0 for y^2 = x^3 + 17
        double hd = std::log(16.0 * 27 * 289);
        CHECK(delta_constant(kRank2).value() == doctest::Approx(hd / 12 + 5.0 / 3));
    }

    TEST_CASE("minimum eigenvalue against closed form")
    {
        CurveProfile p2 = build_profile(kRank2, kBasis2, with_tol(1e-5));
        CurveProfile p3 = build_profile(kRank3, kBasis3, with_tol(1e-5));
        for (const auto * p : {&p2, &p3}) {
            double cert = certified_min_eigenvalue(p->gram);
            double exact = oracle::min_eigenvalue(midpoints(p->gram));
            CHECK(cert <= exact);
            CHECK(cert > exact - 1e-3);
        }
        GramMatrix singular{{Interval(1.0), Interval(1.0)}, {Interval(1.0), Interval(1.0)}};
        CHECK_THROWS_AS(certified_min_eigenvalue(singular), Error);
    }

    TEST_CASE("enumeration matches a coefficient box")
    {
        CurveProfile prof = build_profile(kRank2, kBasis2, with_tol(1e-6));
        auto G = midpoints(prof.gram);
        for (double T : {0.5, 1.3, 2.7, 4.1}) {
            auto pts = enumerate_points_detailed(prof, T);
            CHECK(static_cast<long long>(pts.size()) == oracle::lattice_count(G, T));
            for (const auto & e : pts) {
                CHECK(on_curve(kRank2, e.point));
                CHECK(e.height.lo() <= T);
            }
        }
        // distinct points
        auto pts = enumerate_points_below(prof, 3.0);
        auto sorted = pts;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    }

    TEST_CASE("counting lower bounds")
    {
        CurveProfile prof = build_profile(kRank2, kBasis2, with_tol(1e-6));
        double d = prof.diameter.hi();
        try {
            count_lower_bound(prof, d / 4 * 0.99);
            FAIL("expected HypothesisFailed");
        } catch (const Error & e) {
            CHECK(e.kind() == ErrorKind::HypothesisFailed);
        }
        for (double f : {1.01, 2.0, 5.0}) {
            double T = d / 4 * f;
            auto n = static_cast<double>(enumerate_points_below(prof, T).size());
            CHECK(count_lower_bound(prof, T).value() <= n);
        }
        // the subset version requires the points in ascending height
        auto o = with_tol(1e-6);
        bool first_lower = canonical_height(kRank2, kBasis2[0], o).value < canonical_height(kRank2, kBasis2[1], o).value;
        std::vector<RationalPoint> asc = first_lower ? kBasis2 : std::vector<RationalPoint>{kBasis2[1], kBasis2[0]};
        std::vector<RationalPoint> desc{asc[1], asc[0]};
        CHECK_THROWS_AS(count_lower_bound_subset(1, desc, kRank2, 10.0, o), Error);
        double T = 10.0;
        CHECK(count_lower_bound_subset(1, asc, kRank2, T, o).value() <=
              static_cast<double>(enumerate_points_below(prof, T).size()));
    }
}
