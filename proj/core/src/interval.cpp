#include "ecpair/interval.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "ecpair/errors.hpp"

namespace ecpair {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double down(double x, int ulps = 1)
{
    for (int i = 0; i < ulps; ++i)
        x = std::nextafter(x, -inf);
    return x;
}

double up(double x, int ulps = 1)
{
    for (int i = 0; i < ulps; ++i)
        x = std::nextafter(x, inf);
    return x;
}

// libm transcendental functions are not correctly rounded; 2 ulps covers glibc
constexpr int transcendental_ulps = 2;

} // namespace

Interval::Interval(double exact)
    : lo_(exact)
    , hi_(exact)
{
}

Interval::Interval(double lo, double hi)
    : lo_(lo)
    , hi_(hi)
{
    if (!(lo <= hi))
        raise(ErrorKind::InvalidArgument, "interval with lo > hi");
}

Interval Interval::around(double value, double error)
{
    return {down(value - error), up(value + error)};
}

Interval Interval::hull(const Interval & a, const Interval & b)
{
    return {std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_)};
}

double Interval::value() const
{
    return 0.5 * lo_ + 0.5 * hi_;
}

double Interval::error() const
{
    return up(0.5 * (hi_ - lo_));
}

double Interval::width() const
{
    return up(hi_ - lo_);
}

Interval Interval::operator-() const
{
    return {-hi_, -lo_};
}

Interval & Interval::operator+=(const Interval & o)
{
    lo_ = down(lo_ + o.lo_);
    hi_ = up(hi_ + o.hi_);
    return *this;
}

Interval & Interval::operator-=(const Interval & o)
{
    double l = down(lo_ - o.hi_);
    double h = up(hi_ - o.lo_);
    lo_ = l;
    hi_ = h;
    return *this;
}

Interval & Interval::operator*=(const Interval & o)
{
    double p[4] = {lo_ * o.lo_, lo_ * o.hi_, hi_ * o.lo_, hi_ * o.hi_};
    lo_ = down(*std::min_element(p, p + 4));
    hi_ = up(*std::max_element(p, p + 4));
    return *this;
}

Interval operator/(const Interval & a, const Interval & b)
{
    if (b.contains_zero())
        raise(ErrorKind::DomainError, "interval division by an interval containing zero");
    double p[4] = {a.lo() / b.lo(), a.lo() / b.hi(), a.hi() / b.lo(), a.hi() / b.hi()};
    return {down(*std::min_element(p, p + 4)), up(*std::max_element(p, p + 4))};
}

std::string Interval::str(int precision) const
{
    std::ostringstream os;
    os << std::setprecision(precision) << value() << " +/- " << std::setprecision(2) << error();
    return os.str();
}

Interval abs(const Interval & x)
{
    if (x.lo() >= 0)
        return x;
    if (x.hi() <= 0)
        return -x;
    return {0.0, std::max(-x.lo(), x.hi())};
}

Interval sqrt(const Interval & x)
{
    if (x.hi() < 0)
        raise(ErrorKind::DomainError, "sqrt of negative interval");
    double l = std::max(0.0, x.lo());
    return {std::max(0.0, down(std::sqrt(l))), up(std::sqrt(x.hi()))};
}

Interval log(const Interval & x)
{
    if (!(x.lo() > 0))
        raise(ErrorKind::DomainError, "log of non-positive interval");
    return {down(std::log(x.lo()), transcendental_ulps), up(std::log(x.hi()), transcendental_ulps)};
}

Interval exp(const Interval & x)
{
    return {std::max(0.0, down(std::exp(x.lo()), transcendental_ulps)), up(std::exp(x.hi()), transcendental_ulps)};
}

Interval pow(const Interval & x, double p)
{
    if (p < 0)
        raise(ErrorKind::DomainError, "negative exponent");
    if (p == 0)
        return Interval(1.0);
    if (x.hi() < 0)
        raise(ErrorKind::DomainError, "pow of negative interval");
    double l = std::max(0.0, x.lo());
    return {std::max(0.0, down(std::pow(l, p), transcendental_ulps)), up(std::pow(x.hi(), p), transcendental_ulps)};
}

Interval max(const Interval & a, const Interval & b)
{
    return {std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

Interval clamp_nonnegative(const Interval & x)
{
    if (x.hi() < 0)
        raise(ErrorKind::DomainError, "interval is entirely negative");
    return {std::max(0.0, x.lo()), x.hi()};
}

std::ostream & operator<<(std::ostream & os, const Interval & x)
{
    return os << "[" << x.lo() << ", " << x.hi() << "]";
}

} // namespace ecpair
