#include "ecpair/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ecpair/errors.hpp"

namespace ecpair {

Int parse_int(std::string_view text)
{
    std::string s(text);
    auto first = s.find_first_not_of(" \t");
    auto last = s.find_last_not_of(" \t");
    if (first == std::string::npos)
        raise(ErrorKind::ParseError, "empty integer");
    s = s.substr(first, last - first + 1);
    if (!s.empty() && s.front() == '+')
        s.erase(0, 1);
    Int out;
    if (s.empty() || out.set_str(s, 10) != 0)
        raise(ErrorKind::ParseError, "not an integer: '" + std::string(text) + "'");
    return out;
}

std::string to_string(const Int & n)
{
    return n.get_str();
}

std::string to_string(const Rational & q)
{
    Rational c(q);
    c.canonicalize();
    return c.get_str();
}

Rational ratio(const Int & n, const Int & d)
{
    Rational q(n, d);
    q.canonicalize();
    return q;
}

Int ipow(const Int & base, unsigned long exponent)
{
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
    return out;
}

Int isqrt(const Int & n)
{
    if (n < 0)
        raise(ErrorKind::InvalidArgument, "isqrt of negative number");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const Int & n, Int * root)
{
    if (n < 0 || mpz_perfect_square_p(n.get_mpz_t()) == 0)
        return false;
    if (root)
        mpz_sqrt(root->get_mpz_t(), n.get_mpz_t());
    return true;
}

Int mod_floor(const Int & a, const Int & m)
{
    if (m == 0)
        raise(ErrorKind::InvalidArgument, "modulus zero");
    Int r;
    Int am = abs(m);
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), am.get_mpz_t());
    return r;
}

std::optional<Int> mod_inverse(const Int & a, const Int & m)
{
    Int am = abs(m);
    if (am == 1)
        return Int(0);
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), am.get_mpz_t()) == 0)
        return std::nullopt;
    return r;
}

LogValue log_abs(const Int & n)
{
    if (n == 0)
        raise(ErrorKind::InvalidArgument, "log of zero");
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
    double v = std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
    // mantissa truncation (2^-53 relative) plus rounding in the two terms
    double err = 4.0 * std::numeric_limits<double>::epsilon() * (std::fabs(v) + 1.0);
    return {v, err};
}

std::size_t bit_length(const Int & n)
{
    if (n == 0)
        return 0;
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

bool fits_u64(const Int & n)
{
    return n >= 0 && bit_length(n) <= 64;
}

std::uint64_t to_u64(const Int & n)
{
    if (!fits_u64(n))
        raise(ErrorKind::OutOfRange, "value does not fit in 64 bits: " + n.get_str());
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
    return out;
}

std::int64_t to_i64(const Int & n)
{
    if (bit_length(n) > 62)
        raise(ErrorKind::OutOfRange, "value does not fit in int64: " + n.get_str());
    return static_cast<std::int64_t>(n.get_si());
}

namespace {

bool certainly_prime(const Int & n, std::uint64_t trial_bound)
{
    if (n < 2)
        return false;
    // everything below trial_bound^2 with no factor <= trial_bound is prime
    Int tb(std::to_string(trial_bound));
    if (n <= tb * tb)
        return true;
    // BPSW (GMP >= 6.2) has no counterexamples below 2^64
    return bit_length(n) <= 64 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

} // namespace

std::vector<PrimePower> factorize(const Int & n_in, std::uint64_t trial_bound)
{
    if (n_in == 0)
        raise(ErrorKind::InvalidArgument, "cannot factor zero");
    Int n = abs(n_in);
    std::vector<PrimePower> out;

    // candidates 2, 3, then 6k +- 1
    auto next_candidate = [](std::uint64_t p) -> std::uint64_t {
        if (p < 5)
            return p == 2 ? 3 : 5;
        return p % 6 == 5 ? p + 2 : p + 4;
    };

    std::uint64_t p = 2;
    // multiprecision phase: only while the cofactor exceeds 64 bits
    for (; p <= trial_bound && !fits_u64(n); p = next_candidate(p)) {
        unsigned e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            ++e;
        }
        if (e > 0)
            out.push_back({Int(std::to_string(p)), e});
    }

    if (fits_u64(n)) {
        std::uint64_t m = to_u64(n);
        for (; p <= trial_bound && p <= m / p; p = next_candidate(p)) {
            if (m % p != 0)
                continue;
            unsigned e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            out.push_back({Int(std::to_string(p)), e});
        }
        n = Int(std::to_string(m));
    }

    if (n > 1) {
        if (!certainly_prime(n, trial_bound))
            raise(ErrorKind::FactorizationTimeout, "cofactor " + n.get_str() + " not resolved");
        out.push_back({n, 1});
    }
    return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n)
{
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d <= n / d; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d)
                large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

int mobius(std::uint64_t n)
{
    if (n == 0)
        raise(ErrorKind::InvalidArgument, "mobius(0)");
    int sign = 1;
    for (const auto & pp : factorize(Int(std::to_string(n)))) {
        if (pp.exponent > 1)
            return 0;
        sign = -sign;
    }
    return sign;
}

std::uint64_t sigma1(std::uint64_t n)
{
    std::uint64_t s = 0;
    for (auto d : divisors(n))
        s += d;
    return s;
}

int kronecker(const Int & a, const Int & n)
{
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

} // namespace ecpair
