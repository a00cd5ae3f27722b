#include "ecpair/pairing.hpp"

#include <algorithm>

#include "ecpair/errors.hpp"

namespace ecpair {

namespace {

struct Congruence
{
    Int lhs;     // alpha / G
    Int rhs;     // -2w^3B/Hg - C^3 v D/Hg
    Int modulus; // 2 C^3 v / Hg, positive
};

Congruence congruence(const PairingContext & ctx)
{
    const Int & C = ctx.P.C();
    Int C3v = C * C * C * ctx.Q.v();
    Int w3 = ctx.Q.w() * ctx.Q.w() * ctx.Q.w();
    Int two_w3B = 2 * w3 * ctx.P.B();
    Congruence k;
    k.lhs = ctx.alpha / ctx.G;
    k.rhs = -(two_w3B / ctx.Hg) - (C3v * ctx.D()) / ctx.Hg;
    k.modulus = abs(Int(2 * C3v / ctx.Hg));
    return k;
}

} // namespace

Int PairingContext::leading() const
{
    return alpha / G;
}

bool PairingContext::even_branch() const
{
    return mpz_even_p(leading().get_mpz_t()) != 0;
}

PairingContext pairing_context(const CurveModel & E, const RationalPoint & P, const TwistPoint & Q)
{
    if (P.is_infinity())
        raise(ErrorKind::InvalidArgument, "cannot pair the point at infinity");
    if (!on_curve(E, P))
        raise(ErrorKind::NotOnCurve, P.str() + " is not on " + E.str());
    if (!twist_contains(E, Q))
        raise(ErrorKind::NotOnCurve, Q.str() + " is not on the twist of " + E.str());
    if (mpz_odd_p(Q.D().get_mpz_t()) && mpz_odd_p(Q.v().get_mpz_t()))
        raise(ErrorKind::ParityViolation, "v must be even when -D is odd");

    const Int & A = P.A();
    const Int & B = P.B();
    const Int & C = P.C();
    Int C2 = C * C;
    Int C3v = C2 * C * Q.v();
    Int w2 = Q.w() * Q.w();

    PairingContext ctx{E, P, Q, abs(Int(A * w2 - Q.u() * C2)), 0, 0, 0, 0};
    if (ctx.alpha == 0)
        raise(ErrorKind::DegeneratePair, "alpha = 0 for P = " + P.str());
    ctx.G = gcd(ctx.alpha, Int(C3v * C3v));
    ctx.Hg = gcd(Int(2 * w2 * Q.w() * B), C3v);

    Congruence k = congruence(ctx);
    Int lhs = k.lhs, rhs = k.rhs, mod = k.modulus;
    if (ctx.even_branch()) {
        // alpha/G even: halve the congruence; alpha/(2G) is then inverted
        // modulo C^3 v / Hg
        if (mpz_odd_p(rhs.get_mpz_t()) || mpz_odd_p(mod.get_mpz_t()))
            raise(ErrorKind::NoSolution, "even branch congruence has odd right-hand side");
        lhs /= 2;
        rhs /= 2;
        mod /= 2;
    }
    ctx.ell_step = abs(Int(2 * C3v));
    auto inv = mod_inverse(lhs, mod);
    if (!inv)
        raise(ErrorKind::NoSolution, "alpha/G is not invertible modulo " + mod.get_str());
    Int kk = mod_floor(Int(rhs * *inv), mod);
    Int ell = mod_floor(Int(ctx.Hg * kk), ctx.ell_step);
    if (!ctx.even_branch()) {
        ctx.ell = ell;
        return ctx;
    }
    // ell and ell + C^3 v both solve the halved congruence but differ in
    // whether 4 alpha divides the numerator of the Y^2 coefficient
    Int other = mod_floor(Int(ell + C3v), ctx.ell_step);
    for (const Int & cand : {std::min(ell, other), std::max(ell, other)}) {
        if (ell_is_valid(ctx, cand)) {
            ctx.ell = cand;
            return ctx;
        }
    }
    raise(ErrorKind::NoSolution, "neither lift of ell modulo 2C^3v gives an integral form for P = " + P.str());
}

bool ell_is_valid(const PairingContext & ctx, const Int & ell)
{
    if (!mpz_divisible_p(ell.get_mpz_t(), ctx.Hg.get_mpz_t()))
        return false;
    Congruence k = congruence(ctx);
    Int diff = k.lhs * (ell / ctx.Hg) - k.rhs;
    if (!mpz_divisible_p(diff.get_mpz_t(), k.modulus.get_mpz_t()))
        return false;
    try {
        pair_form_with_ell(ctx, ell);
    } catch (const Error & e) {
        if (e.kind() != ErrorKind::IntegralityFailure)
            throw;
        return false;
    }
    return true;
}

PairingContext with_ell(PairingContext ctx, const Int & ell)
{
    if (!ell_is_valid(ctx, ell))
        raise(ErrorKind::InvalidArgument, "ell = " + ell.get_str() + " does not solve the pairing congruence");
    ctx.ell = ell;
    return ctx;
}

QuadraticForm pair_form_with_ell(const PairingContext & ctx, const Int & ell)
{
    const Int & C = ctx.P.C();
    Int C3v = C * C * C * ctx.Q.v();
    Int w3 = ctx.Q.w() * ctx.Q.w() * ctx.Q.w();
    Int a = ctx.leading();
    Int num_b = 2 * w3 * ctx.P.B() + ell * a;
    if (!mpz_divisible_p(num_b.get_mpz_t(), C3v.get_mpz_t()))
        raise(ErrorKind::IntegralityFailure, "XY coefficient is not integral");
    Int b = num_b / C3v;
    Int num_c = num_b * num_b + C3v * C3v * ctx.D();
    Int den_c = 4 * C3v * C3v * a;
    if (!mpz_divisible_p(num_c.get_mpz_t(), den_c.get_mpz_t()))
        raise(ErrorKind::IntegralityFailure, "Y^2 coefficient is not integral");
    return {a, b, num_c / den_c};
}

QuadraticForm pair_form(const PairingContext & ctx)
{
    if (!ell_is_valid(ctx, ctx.ell))
        raise(ErrorKind::InvalidArgument, "context carries an invalid ell");
    QuadraticForm f = pair_form_with_ell(ctx, ctx.ell);
    if (mpz_even_p(f.b.get_mpz_t()) != mpz_even_p(ctx.D().get_mpz_t()))
        raise(ErrorKind::IntegralityFailure, "parity of the XY coefficient differs from that of -D");
    if (f.discriminant() != -ctx.D())
        raise(ErrorKind::DiscriminantFailure, f.triple() + " has discriminant " + f.discriminant().get_str());
    if (!f.positive_definite())
        raise(ErrorKind::DiscriminantFailure, f.triple() + " is not positive definite");
    return f;
}

bool inequivalence_guard(const Rational & a1, const Rational & a2, const Int & D)
{
    // equivalent forms with a1 != a2 have a1 a2 >= D/4, with equality possible
    // (X^2 + 6Y^2 and 6X^2 + Y^2 for D = 24), so the comparison is strict
    return a1 != a2 && a1 * a2 < ratio(D, 4);
}

std::vector<QuadraticForm> pair_point_set(const CurveModel & E, const TwistPoint & Q,
                                          const std::vector<RationalPoint> & points)
{
    std::vector<QuadraticForm> out;
    for (const auto & P : points) {
        if (P.is_infinity())
            continue;
        try {
            out.push_back(reduce(pair_form(pairing_context(E, P, Q))).form);
        } catch (const Error & e) {
            if (e.kind() != ErrorKind::DegeneratePair)
                throw;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace ecpair
