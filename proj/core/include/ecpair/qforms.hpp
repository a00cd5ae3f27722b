#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "ecpair/arith.hpp"

namespace ecpair {

/// Integral binary quadratic form a X^2 + b XY + c Y^2.
struct QuadraticForm
{
    Int a, b, c;

    Int discriminant() const { return b * b - 4 * a * c; }
    bool positive_definite() const { return a > 0 && discriminant() < 0; }
    Int evaluate(const Int & x, const Int & y) const { return a * x * x + b * x * y + c * y * y; }

    /// "3X^2 + 12XY + 14Y^2"
    std::string str() const;
    /// "(3, 12, 14)"
    std::string triple() const;

    friend bool operator==(const QuadraticForm & f, const QuadraticForm & g)
    {
        return f.a == g.a && f.b == g.b && f.c == g.c;
    }
    friend std::strong_ordering operator<=>(const QuadraticForm & f, const QuadraticForm & g);
};

/// 2x2 integer matrix acting by F(m00 X + m01 Y, m10 X + m11 Y).
struct Unimodular
{
    Int m00{1}, m01{0}, m10{0}, m11{1};

    Int det() const { return m00 * m11 - m01 * m10; }
    Unimodular operator*(const Unimodular & o) const;
    friend bool operator==(const Unimodular & x, const Unimodular & y)
    {
        return x.m00 == y.m00 && x.m01 == y.m01 && x.m10 == y.m10 && x.m11 == y.m11;
    }
};

QuadraticForm transform(const QuadraticForm & f, const Unimodular & m);

bool is_reduced(const QuadraticForm & f);

struct Reduction
{
    QuadraticForm form;
    /// transform(input, matrix) == form, det(matrix) == 1
    Unimodular matrix;
};

/// Gauss reduction to the unique reduced representative: |b| <= a <= c and
/// b >= 0 whenever |b| = a or a = c.
Reduction reduce(const QuadraticForm & f);

/// SL2(Z)-equivalence via reduced representatives.
bool equivalent(const QuadraticForm & f, const QuadraticForm & g);

/// -D = 0, 1 mod 4 and D > 0
bool is_discriminant(std::uint64_t D);

/// Reduced forms of discriminant -D sorted by (a, b); includes non-primitive forms.
std::vector<QuadraticForm> reduced_forms(std::uint64_t D);

/// Number of reduced forms of discriminant -D, i.e. h(-D) when -D is fundamental.
std::uint64_t class_number(std::uint64_t D);

struct FormCensus
{
    std::uint64_t count = 0;
    /// sum over classes of 1/|Aut|: 1/3 for multiples of (1,1,1), 1/2 for
    /// multiples of (1,0,1), 1 otherwise
    Rational weighted;
};
FormCensus form_census(std::uint64_t D);

bool is_fundamental(std::uint64_t D);
/// Same test for any D > 0 given its factorization.
bool is_fundamental(const Int & D, const std::vector<PrimePower> & factors);

struct FundamentalDecomposition
{
    std::uint64_t D0;
    std::uint64_t f;
};
/// -D = -D0 f^2 with -D0 fundamental.
FundamentalDecomposition fundamental_decomposition(std::uint64_t D);

/// chi_{-D0}(n) = (-D0 | n); NotFundamental unless -D0 is fundamental.
int kronecker_chi(std::uint64_t D0, const Int & n);

/// Half the number of units of Q(sqrt(-D0)): 3, 2 or 1.
unsigned unit_weight(std::uint64_t D0);

/// H(-D) = h(-D0)/w(-D0) * sum_{d | f} mu(d) chi_{-D0}(d) sigma_1(f/d).
Rational hurwitz_class_number(std::uint64_t D);

} // namespace ecpair
