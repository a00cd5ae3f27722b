#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace ecpair {

using Int = mpz_class;
using Rational = mpq_class;

Int parse_int(std::string_view text);
std::string to_string(const Int & n);
std::string to_string(const Rational & q);

/// n/d in lowest terms with positive denominator; d != 0.
Rational ratio(const Int & n, const Int & d);

Int ipow(const Int & base, unsigned long exponent);
Int isqrt(const Int & n);
/// Sets *root when n is a perfect square (n >= 0).
bool is_square(const Int & n, Int * root = nullptr);

/// Least nonnegative residue of a modulo |m|.
Int mod_floor(const Int & a, const Int & m);
std::optional<Int> mod_inverse(const Int & a, const Int & m);

/// Natural log of |n| for n != 0, accurate even when n has millions of digits.
/// The second member is an absolute error bound on the returned value.
struct LogValue
{
    double value;
    double error;
};
LogValue log_abs(const Int & n);

std::size_t bit_length(const Int & n);

bool fits_u64(const Int & n);
std::uint64_t to_u64(const Int & n);
std::int64_t to_i64(const Int & n);

struct PrimePower
{
    Int prime;
    unsigned exponent;
};

/// Factorization by trial division up to trial_bound. A remaining cofactor is
/// accepted when it is provably prime (below trial_bound^2, or below 2^64
/// where GMP's BPSW test is exact); otherwise FactorizationTimeout.
std::vector<PrimePower> factorize(const Int & n, std::uint64_t trial_bound = 1'000'000'000ULL);

std::vector<std::uint64_t> divisors(std::uint64_t n);
int mobius(std::uint64_t n);
std::uint64_t sigma1(std::uint64_t n);

/// Kronecker symbol (a | n).
int kronecker(const Int & a, const Int & n);

} // namespace ecpair
