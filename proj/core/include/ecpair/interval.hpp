#pragma once

#include <iosfwd>
#include <string>

namespace ecpair {

/// Closed real interval with outward-rounded endpoint arithmetic.
///
/// Every real quantity that feeds a theorem hypothesis (heights, pairings,
/// regulators, diameters, the constants c(E) and delta(E)) is carried as an
/// Interval so that "satisfied" means certified rather than "looks right in
/// double precision". value() is the midpoint and error() the half-width.
class Interval
{
  public:
    constexpr Interval() = default;
    explicit Interval(double exact);
    Interval(double lo, double hi);

    static Interval around(double value, double error);
    static Interval hull(const Interval & a, const Interval & b);

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double value() const;
    double error() const;
    double width() const;

    bool contains(double x) const { return lo_ <= x && x <= hi_; }
    bool contains_zero() const { return contains(0.0); }
    bool certainly_positive() const { return lo_ > 0.0; }
    bool certainly_negative() const { return hi_ < 0.0; }

    Interval operator-() const;
    Interval & operator+=(const Interval & o);
    Interval & operator-=(const Interval & o);
    Interval & operator*=(const Interval & o);

    friend Interval operator+(Interval a, const Interval & b) { return a += b; }
    friend Interval operator-(Interval a, const Interval & b) { return a -= b; }
    friend Interval operator*(Interval a, const Interval & b) { return a *= b; }
    friend Interval operator/(const Interval & a, const Interval & b);

    std::string str(int precision = 10) const;

  private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

Interval abs(const Interval & x);
Interval sqrt(const Interval & x);
Interval log(const Interval & x);
Interval exp(const Interval & x);
/// x^p for x >= 0 (lower endpoint clamped to 0) and real p >= 0.
Interval pow(const Interval & x, double p);
Interval max(const Interval & a, const Interval & b);
Interval clamp_nonnegative(const Interval & x);

/// a < b for every choice of points in the two intervals.
inline bool certainly_less(const Interval & a, const Interval & b) { return a.hi() < b.lo(); }
inline bool certainly_less_equal(const Interval & a, const Interval & b) { return a.hi() <= b.lo(); }

std::ostream & operator<<(std::ostream & os, const Interval & x);

} // namespace ecpair
