#include "ecpair/heights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "ecpair/errors.hpp"

namespace ecpair {

namespace {

Interval log_interval(const Int & n)
{
    auto l = log_abs(n);
    return Interval::around(l.value, l.error);
}

Int bareiss_determinant(std::vector<std::vector<Int>> m)
{
    const std::size_t n = m.size();
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0)
                ++piv;
            if (piv == n)
                return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// Interval 4^-k, exact for the k we ever reach.
double quarter_power(unsigned k)
{
    return std::ldexp(1.0, -2 * static_cast<int>(k));
}

} // namespace

Int naive_height(const RationalPoint & P)
{
    if (P.is_infinity())
        raise(ErrorKind::InfinitePoint, "naive height of O");
    Int c2 = P.C() * P.C();
    Int a = abs(P.A());
    return a > c2 ? a : c2;
}

double weil_height(const RationalPoint & P)
{
    return log_abs(naive_height(P)).value;
}

double weil_height_rational(const Rational & q)
{
    return weil_height_interval(q).value();
}

Interval weil_height_interval(const Rational & q_in)
{
    Rational q = q_in;
    q.canonicalize();
    if (q == 0)
        return Interval(0.0);
    Int p = abs(q.get_num());
    const Int & s = q.get_den();
    return clamp_nonnegative(log_interval(p > s ? p : s));
}

SilvermanWindow silverman_window(const CurveModel & E)
{
    Interval hj = weil_height_interval(E.j_invariant());
    Interval hd = weil_height_interval(Rational(E.discriminant()));
    Interval eighth(0.125), twelfth = Interval(1.0) / Interval(12.0);
    return {
        eighth * hj + twelfth * hd + Interval(0.973),
        twelfth * hj + twelfth * hd + Interval(1.07),
    };
}

Int duplication_resultant(const CurveModel & E)
{
    const Int & a = E.a4();
    const Int & b = E.a6();
    // F(X,Z) = X^4 - 2a X^2 Z^2 - 8b X Z^3 + a^2 Z^4
    // G(X,Z) = 4 X^3 Z + 4a X Z^3 + 4b Z^4
    std::vector<Int> f{1, 0, -2 * a, -8 * b, a * a};
    std::vector<Int> g{0, 4, 0, 4 * a, 4 * b};
    std::vector<std::vector<Int>> syl(8, std::vector<Int>(8, Int(0)));
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t i = 0; i < 5; ++i) {
            syl[r][r + i] = f[i];
            syl[r + 4][r + i] = g[i];
        }
    return bareiss_determinant(std::move(syl));
}

HeightEstimate canonical_height(const CurveModel & E, const RationalPoint & P, const HeightOptions & opt)
{
    if (P.is_infinity())
        raise(ErrorKind::InfinitePoint, "canonical height of O");
    if (!(opt.tol > 0))
        raise(ErrorKind::InvalidArgument, "height tolerance must be positive");
    if (torsion_point_order(E, P))
        return {0.0, 0.0, 0};

    const SilvermanWindow win = silverman_window(E);
    const Int res = abs(duplication_resultant(E));
    const std::size_t max_bits =
        static_cast<std::size_t>(static_cast<double>(opt.max_digits) * std::numbers::ln10 / std::numbers::ln2) + 1;

    Int X = P.A();
    Int Z = P.C() * P.C();
    Int X2, Z2, F, G, g, t;
    for (unsigned k = 0;; ++k) {
        Interval half_hw = Interval(0.5) * log_interval(mpz_cmpabs(X.get_mpz_t(), Z.get_mpz_t()) > 0 ? X : Z);
        Interval scale(quarter_power(k));
        Interval lo = (half_hw - win.lower) * scale;
        Interval hi = (half_hw + win.upper) * scale;
        Interval est(std::max(0.0, lo.lo()), hi.hi());
        if (est.error() <= opt.tol)
            return {est.value(), est.error(), k};

        if (bit_length(X) > max_bits || bit_length(Z) > max_bits)
            raise(ErrorKind::IterationOverflow,
                  "coordinates of 2^" + std::to_string(k) + "P exceed " + std::to_string(opt.max_digits) +
                      " digits before reaching tolerance");

        // x(2P) = F(X,Z) / G(X,Z) with
        //   F = (X^2 - a4 Z^2)^2 - 8 a6 X Z^3,  G = 4 Z (X^3 + a4 X Z^2 + a6 Z^3)
        X2 = X * X;
        Z2 = Z * Z;
        t = X2 - E.a4() * Z2;
        F = t * t;
        t = X * Z;
        t *= Z2;
        F -= 8 * E.a6() * t;
        t = X2 + E.a4() * Z2;
        t *= X;
        G = Z * Z2;
        t += E.a6() * G;
        G = 4 * Z * t;
        if (G == 0)
            raise(ErrorKind::NoSolution, "2^k P hit a 2-torsion point although P is not torsion");

        mpz_fdiv_r(g.get_mpz_t(), F.get_mpz_t(), res.get_mpz_t());
        g = gcd(g, res);
        mpz_fdiv_r(t.get_mpz_t(), G.get_mpz_t(), g.get_mpz_t());
        g = gcd(g, t);
        mpz_divexact(X.get_mpz_t(), F.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(Z.get_mpz_t(), G.get_mpz_t(), g.get_mpz_t());
    }
}

Interval height_pairing(const CurveModel & E, const RationalPoint & P, const RationalPoint & Q, const HeightOptions & opt)
{
    auto h = [&](const RationalPoint & R) {
        return R.is_infinity() ? Interval(0.0) : canonical_height(E, R, opt).interval();
    };
    RationalPoint S = point_add(E, P, Q);
    return Interval(0.5) * (h(S) - h(P) - h(Q));
}

GramMatrix height_gram(const CurveModel & E, const std::vector<RationalPoint> & basis, const HeightOptions & opt)
{
    const std::size_t r = basis.size();
    std::vector<Interval> diag(r);
    for (std::size_t i = 0; i < r; ++i) {
        if (basis[i].is_infinity())
            raise(ErrorKind::DependentPoints, "basis contains the point at infinity");
        diag[i] = canonical_height(E, basis[i], opt).interval();
    }
    GramMatrix g(r, std::vector<Interval>(r));
    for (std::size_t i = 0; i < r; ++i) {
        g[i][i] = diag[i];
        for (std::size_t j = i + 1; j < r; ++j) {
            RationalPoint S = point_add(E, basis[i], basis[j]);
            Interval hs = S.is_infinity() ? Interval(0.0) : canonical_height(E, S, opt).interval();
            g[i][j] = g[j][i] = Interval(0.5) * (hs - diag[i] - diag[j]);
        }
    }
    return g;
}

Interval determinant(const GramMatrix & m)
{
    const std::size_t n = m.size();
    if (n == 0)
        return Interval(1.0);
    if (n == 1)
        return m[0][0];
    if (n > 8)
        raise(ErrorKind::InvalidArgument, "determinant expansion limited to 8x8");
    Interval acc(0.0);
    for (std::size_t col = 0; col < n; ++col) {
        GramMatrix minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Interval> row;
            for (std::size_t j = 0; j < n; ++j)
                if (j != col)
                    row.push_back(m[i][j]);
            minor.push_back(std::move(row));
        }
        Interval term = m[0][col] * determinant(minor);
        acc = (col % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

Interval quadratic_value(const GramMatrix & g, const std::vector<long> & n)
{
    Interval acc(0.0);
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i] == 0)
            continue;
        acc += Interval(static_cast<double>(n[i]) * static_cast<double>(n[i])) * g[i][i];
        for (std::size_t j = i + 1; j < n.size(); ++j)
            if (n[j] != 0)
                acc += Interval(2.0 * static_cast<double>(n[i]) * static_cast<double>(n[j])) * g[i][j];
    }
    return acc;
}

Interval regulator_from_gram(const GramMatrix & g)
{
    Interval det = abs(determinant(g));
    if (det.contains_zero())
        raise(ErrorKind::DependentPoints, "height pairing determinant " + det.str() + " is not certainly nonzero");
    return det;
}

Interval regulator(const CurveModel & E, const std::vector<RationalPoint> & basis, const HeightOptions & opt)
{
    return regulator_from_gram(height_gram(E, basis, opt));
}

Interval diameter_from_gram(const GramMatrix & g)
{
    const std::size_t r = g.size();
    Interval best(0.0);
    std::vector<long> delta(r, -1);
    if (r == 0)
        return best;
    for (;;) {
        best = max(best, Interval(2.0) * quadratic_value(g, delta));
        std::size_t i = 0;
        while (i < r && delta[i] == 1)
            delta[i++] = -1;
        if (i == r)
            break;
        ++delta[i];
    }
    return best;
}

Interval diameter(const CurveModel & E, const std::vector<RationalPoint> & basis, const HeightOptions & opt)
{
    GramMatrix g = height_gram(E, basis, opt);
    regulator_from_gram(g);
    return diameter_from_gram(g);
}

double omega(unsigned r)
{
    double half = 0.5 * static_cast<double>(r);
    return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

Interval omega_interval(unsigned r)
{
    double v = omega(r);
    return Interval::around(v, 8 * std::numeric_limits<double>::epsilon() * v);
}

Interval delta_constant(const CurveModel & E)
{
    Interval hj = weil_height_interval(E.j_invariant());
    Interval hd = weil_height_interval(Rational(E.discriminant()));
    return Interval(0.125) * hj + hd / Interval(12.0) + Interval(5.0) / Interval(3.0);
}

Interval c_constant(std::size_t torsion_order, unsigned rank, const Interval & regulator)
{
    return Interval(static_cast<double>(torsion_order)) * omega_interval(rank) / sqrt(regulator);
}

Interval CurveProfile::bsd_regulator() const
{
    return Interval(std::ldexp(1.0, static_cast<int>(rank()))) * regulator;
}

CurveProfile build_profile(const CurveModel & E, const std::vector<RationalPoint> & basis, const HeightOptions & opt)
{
    for (const auto & P : basis)
        if (!on_curve(E, P))
            raise(ErrorKind::NotOnCurve, P.str() + " is not on " + E.str());
    GramMatrix g = height_gram(E, basis, opt);
    Interval reg = regulator_from_gram(g);
    auto tors = torsion_points(E);
    Interval d = diameter_from_gram(g);
    Interval c = c_constant(tors.size(), static_cast<unsigned>(basis.size()), reg);
    return CurveProfile{E, basis, std::move(tors), std::move(g), reg, d, c, delta_constant(E), opt};
}

double certified_min_eigenvalue(const GramMatrix & g)
{
    const std::size_t r = g.size();
    if (r == 0)
        return std::numeric_limits<double>::infinity();
    Eigen::MatrixXd mid(r, r);
    double radius2 = 0.0, scale2 = 0.0;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            mid(i, j) = g[i][j].value();
            radius2 += g[i][j].error() * g[i][j].error();
            scale2 += mid(i, j) * mid(i, j);
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mid, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        raise(ErrorKind::DegenerateGram, "eigenvalue solver failed");
    // Weyl: eigenvalues move by at most the spectral (<= Frobenius) norm of
    // the perturbation; the solver itself is backward stable to ~r eps |G|.
    double lam = solver.eigenvalues().minCoeff();
    double slack = std::sqrt(radius2) + 64.0 * static_cast<double>(r) * std::numeric_limits<double>::epsilon() *
                                            std::sqrt(scale2);
    double cert = lam - slack;
    if (!(cert > 0))
        raise(ErrorKind::DegenerateGram, "Gram matrix is not certainly positive definite");
    return cert;
}

std::vector<EnumeratedPoint> enumerate_points_detailed(const CurveProfile & profile, double T)
{
    const CurveModel & E = profile.curve;
    const std::size_t r = profile.rank();
    std::vector<EnumeratedPoint> out;
    if (!std::isfinite(T))
        raise(ErrorKind::InvalidArgument, "height bound must be finite");
    if (T < 0)
        return out;

    const double lam = certified_min_eigenvalue(profile.gram);
    const long N = r == 0 ? 0 : static_cast<long>(std::floor(std::sqrt(T / lam) * (1 + 1e-12)));

    // multiples[i][k + N] = k P_i
    std::vector<std::vector<RationalPoint>> multiples(r);
    for (std::size_t i = 0; i < r; ++i) {
        auto & m = multiples[i];
        m.assign(2 * N + 1, RationalPoint::infinity());
        for (long k = 1; k <= N; ++k) {
            m[N + k] = point_add(E, m[N + k - 1], profile.basis[i]);
            m[N - k] = -m[N + k];
        }
    }

    std::vector<long> n(r, -N);
    for (;;) {
        Interval q = quadratic_value(profile.gram, n);
        bool include = q.hi() <= T;
        bool undecided = !include && q.lo() <= T;
        if (include || undecided) {
            RationalPoint base = RationalPoint::infinity();
            for (std::size_t i = 0; i < r; ++i)
                base = point_add(E, base, multiples[i][n[i] + N]);
            if (undecided && !base.is_infinity()) {
                // refine with a direct height computation
                HeightOptions o = profile.options;
                Interval h = q;
                while (h.contains(T) && o.tol > 1e-12) {
                    o.tol = std::max(1e-12, std::min(o.tol, std::fabs(h.value() - T)) / 16);
                    try {
                        h = canonical_height(E, base, o).interval();
                    } catch (const Error & e) {
                        if (e.kind() != ErrorKind::IterationOverflow)
                            throw;
                        break;
                    }
                }
                q = h;
                include = q.lo() <= T;
            } else if (undecided) {
                include = true;
            }
            if (include) {
                for (std::size_t ti = 0; ti < profile.torsion.size(); ++ti)
                    out.push_back({n, ti, point_add(E, base, profile.torsion[ti]), q});
            }
        }
        std::size_t i = 0;
        while (i < r && n[i] == N)
            n[i++] = -N;
        if (i == r)
            break;
        ++n[i];
    }
    return out;
}

std::vector<RationalPoint> enumerate_points_below(const CurveProfile & profile, double T)
{
    std::vector<RationalPoint> out;
    for (auto & e : enumerate_points_detailed(profile, T))
        out.push_back(std::move(e.point));
    return out;
}

namespace {

Interval lattice_count_bound(const Interval & lead, unsigned m, const Interval & radius_term, double T)
{
    Interval t(T);
    double hm = 0.5 * static_cast<double>(m);
    Interval main = pow(t, hm);
    Interval corr = m == 0 ? Interval(0.0) : radius_term * pow(t, hm - 0.5);
    return lead * (main - corr);
}

} // namespace

Interval count_lower_bound(const CurveProfile & profile, double T)
{
    const Interval & d = profile.diameter;
    if (!(T > d.hi() / 4))
        raise(ErrorKind::HypothesisFailed, "T = " + std::to_string(T) + " is not certainly above d(E)/4 = " +
                                               std::to_string(d.hi() / 4));
    unsigned r = profile.rank();
    return lattice_count_bound(profile.c_E, r, Interval(static_cast<double>(r)) * sqrt(d), T);
}

Interval count_lower_bound_subset(std::size_t G_order, const std::vector<RationalPoint> & points, const CurveModel & E,
                                  double T, const HeightOptions & opt)
{
    const unsigned m = static_cast<unsigned>(points.size());
    if (m == 0)
        raise(ErrorKind::InvalidArgument, "empty point set");
    GramMatrix g = height_gram(E, points, opt);
    for (unsigned i = 0; i + 1 < m; ++i)
        if (certainly_less(g[i + 1][i + 1], g[i][i]))
            raise(ErrorKind::InvalidArgument, "points must be listed in ascending order of height");
    regulator_from_gram(g);
    Interval d = diameter_from_gram(g);
    if (!(T > d.hi() / 4))
        raise(ErrorKind::HypothesisFailed, "T is not certainly above d(B)/4");
    const Interval & hm = g[m - 1][m - 1];
    Interval lead = Interval(static_cast<double>(G_order)) * omega_interval(m) / sqrt(pow(hm, static_cast<double>(m)));
    Interval radius = Interval(static_cast<double>(m) * m) * sqrt(Interval(2.0) * hm);
    return lattice_count_bound(lead, m, radius, T);
}

} // namespace ecpair
