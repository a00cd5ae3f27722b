#include "ecpair/qforms.hpp"

#include <algorithm>
#include <cmath>

#include "ecpair/errors.hpp"

namespace ecpair {

std::strong_ordering operator<=>(const QuadraticForm & f, const QuadraticForm & g)
{
    for (auto [x, y] : {std::pair{&f.a, &g.a}, std::pair{&f.b, &g.b}, std::pair{&f.c, &g.c}}) {
        int c = cmp(*x, *y);
        if (c != 0)
            return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

namespace {

void append_term(std::string & s, const Int & coef, const char * monomial)
{
    if (coef == 0)
        return;
    if (s.empty())
        s += coef < 0 ? "-" : "";
    else
        s += coef < 0 ? " - " : " + ";
    Int m = abs(coef);
    if (m != 1)
        s += m.get_str();
    s += monomial;
}

} // namespace

std::string QuadraticForm::str() const
{
    std::string s;
    append_term(s, a, "X^2");
    append_term(s, b, "XY");
    append_term(s, c, "Y^2");
    return s.empty() ? "0" : s;
}

std::string QuadraticForm::triple() const
{
    return "(" + a.get_str() + ", " + b.get_str() + ", " + c.get_str() + ")";
}

Unimodular Unimodular::operator*(const Unimodular & o) const
{
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11, m10 * o.m00 + m11 * o.m10,
            m10 * o.m01 + m11 * o.m11};
}

QuadraticForm transform(const QuadraticForm & f, const Unimodular & m)
{
    const Int &p = m.m00, &q = m.m01, &r = m.m10, &s = m.m11;
    return {
        f.a * p * p + f.b * p * r + f.c * r * r,
        2 * f.a * p * q + f.b * (p * s + q * r) + 2 * f.c * r * s,
        f.a * q * q + f.b * q * s + f.c * s * s,
    };
}

bool is_reduced(const QuadraticForm & f)
{
    if (!f.positive_definite())
        return false;
    Int ab = abs(f.b);
    if (!(ab <= f.a && f.a <= f.c))
        return false;
    if ((ab == f.a || f.a == f.c) && f.b < 0)
        return false;
    return true;
}

Reduction reduce(const QuadraticForm & f)
{
    if (!f.positive_definite())
        raise(ErrorKind::NotPositiveDefinite, f.triple() + " is not positive definite");
    const Unimodular swap{0, -1, 1, 0};
    Reduction r{f, Unimodular{}};
    QuadraticForm & g = r.form;
    for (;;) {
        if (!(-g.a < g.b && g.b <= g.a)) {
            Int t;
            Int num = g.a - g.b;
            Int den = 2 * g.a;
            mpz_fdiv_q(t.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            Unimodular shift{1, t, 0, 1};
            g = transform(g, shift);
            r.matrix = r.matrix * shift;
        }
        if (g.a > g.c) {
            g = transform(g, swap);
            r.matrix = r.matrix * swap;
            continue;
        }
        break;
    }
    if (g.a == g.c && g.b < 0) {
        g = transform(g, swap);
        r.matrix = r.matrix * swap;
    }
    return r;
}

bool equivalent(const QuadraticForm & f, const QuadraticForm & g)
{
    if (!f.positive_definite())
        raise(ErrorKind::NotPositiveDefinite, f.triple() + " is not positive definite");
    if (!g.positive_definite())
        raise(ErrorKind::NotPositiveDefinite, g.triple() + " is not positive definite");
    if (f.discriminant() != g.discriminant())
        return false;
    return reduce(f).form == reduce(g).form;
}

bool is_discriminant(std::uint64_t D)
{
    return D > 0 && (D % 4 == 0 || D % 4 == 3);
}

namespace {

void require_discriminant(std::uint64_t D)
{
    if (!is_discriminant(D))
        raise(ErrorKind::InvalidDiscriminant, "-" + std::to_string(D) + " is not 0 or 1 mod 4");
    if (D >= (std::uint64_t{1} << 62))
        raise(ErrorKind::OutOfRange, "discriminant too large for brute-force enumeration");
}

// Calls visit(a, b, c) for every reduced form with b >= 0; the caller adds
// the mirror (a, -b, c) when 0 < b < a < c.
template <class Word, class Visit>
void for_each_reduced_nonneg(std::uint64_t D, Visit && visit)
{
    for (std::uint64_t b = D % 2; 3 * b * b <= D; b += 2) {
        const Word n = static_cast<Word>((b * b + D) / 4);
        for (Word a = std::max<Word>(static_cast<Word>(b), 1); a <= n / a; ++a)
            if (n % a == 0)
                visit(static_cast<std::uint64_t>(a), b, static_cast<std::uint64_t>(n / a));
    }
}

template <class Visit>
void enumerate_reduced(std::uint64_t D, Visit && visit)
{
    // (b^2 + D)/4 < D/3 for every b in range, so 32-bit words suffice below ~1.2e10
    if (D < (std::uint64_t{3} << 32) - 3)
        for_each_reduced_nonneg<std::uint32_t>(D, visit);
    else
        for_each_reduced_nonneg<std::uint64_t>(D, visit);
}

} // namespace

std::vector<QuadraticForm> reduced_forms(std::uint64_t D)
{
    require_discriminant(D);
    std::vector<QuadraticForm> out;
    auto u = [](std::uint64_t x) { return Int(static_cast<unsigned long>(x)); };
    enumerate_reduced(D, [&](std::uint64_t a, std::uint64_t b, std::uint64_t c) {
        out.push_back({u(a), u(b), u(c)});
        if (b > 0 && b < a && a < c)
            out.push_back({u(a), -u(b), u(c)});
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t class_number(std::uint64_t D)
{
    require_discriminant(D);
    std::uint64_t count = 0;
    enumerate_reduced(D, [&](std::uint64_t a, std::uint64_t b, std::uint64_t c) {
        count += (b > 0 && b < a && a < c) ? 2 : 1;
    });
    return count;
}

FormCensus form_census(std::uint64_t D)
{
    require_discriminant(D);
    std::uint64_t full = 0, halves = 0, thirds = 0, count = 0;
    enumerate_reduced(D, [&](std::uint64_t a, std::uint64_t b, std::uint64_t c) {
        if (a == b && b == c) {
            ++thirds;
            ++count;
        } else if (b == 0 && a == c) {
            ++halves;
            ++count;
        } else {
            std::uint64_t k = (b > 0 && b < a && a < c) ? 2 : 1;
            full += k;
            count += k;
        }
    });
    FormCensus out;
    out.count = count;
    out.weighted = Rational(static_cast<unsigned long>(full)) + ratio(static_cast<unsigned long>(halves), 2) +
                   ratio(static_cast<unsigned long>(thirds), 3);
    out.weighted.canonicalize();
    return out;
}

namespace {

bool squarefree(std::uint64_t n)
{
    for (const auto & pp : factorize(Int(static_cast<unsigned long>(n))))
        if (pp.exponent > 1)
            return false;
    return true;
}

} // namespace

bool is_fundamental(std::uint64_t D)
{
    if (D == 0)
        return false;
    if (D % 4 == 3)
        return squarefree(D);
    if (D % 4 != 0)
        return false;
    std::uint64_t m = D / 4;
    // -m = 2 or 3 mod 4
    return (m % 4 == 1 || m % 4 == 2) && squarefree(m);
}

bool is_fundamental(const Int & D, const std::vector<PrimePower> & factors)
{
    if (D <= 0)
        return false;
    // -D = 1 mod 4 squarefree, or -D = 4m with m = 2, 3 mod 4 squarefree
    unsigned long r = mpz_fdiv_ui(D.get_mpz_t(), 16);
    unsigned two = 0;
    for (const auto & pp : factors) {
        if (pp.prime == 2)
            two = pp.exponent;
        else if (pp.exponent > 1)
            return false;
    }
    if (r % 4 == 3)
        return two == 0;
    if (two == 2)
        return (r / 4) % 4 == 1;
    return two == 3;
}

FundamentalDecomposition fundamental_decomposition(std::uint64_t D)
{
    require_discriminant(D);
    std::uint64_t s = 1, g = 1;
    for (const auto & pp : factorize(Int(static_cast<unsigned long>(D)))) {
        std::uint64_t p = to_u64(pp.prime);
        for (unsigned e = 0; e < pp.exponent / 2; ++e)
            g *= p;
        if (pp.exponent % 2 == 1)
            s *= p;
    }
    if (s % 4 == 3)
        return {s, g};
    // s = 1, 2 mod 4 forces g even because D = 0, 3 mod 4
    return {4 * s, g / 2};
}

int kronecker_chi(std::uint64_t D0, const Int & n)
{
    if (!is_fundamental(D0))
        raise(ErrorKind::NotFundamental, "-" + std::to_string(D0) + " is not a fundamental discriminant");
    return kronecker(-Int(static_cast<unsigned long>(D0)), n);
}

unsigned unit_weight(std::uint64_t D0)
{
    if (D0 == 3)
        return 3;
    if (D0 == 4)
        return 2;
    return 1;
}

Rational hurwitz_class_number(std::uint64_t D)
{
    auto [D0, f] = fundamental_decomposition(D);
    long sum = 0;
    for (auto d : divisors(f))
        sum += static_cast<long>(mobius(d)) * kronecker_chi(D0, Int(static_cast<unsigned long>(d))) *
               static_cast<long>(sigma1(f / d));
    Rational out(Int(static_cast<unsigned long>(class_number(D0))) * sum, Int(unit_weight(D0)));
    out.canonicalize();
    return out;
}

} // namespace ecpair
