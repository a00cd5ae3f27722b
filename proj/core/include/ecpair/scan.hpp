#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ecpair/bounds.hpp"
#include "ecpair/heights.hpp"
#include "ecpair/qforms.hpp"

namespace ecpair {

struct ScanOptions
{
    /// class numbers are computed only for D <= oracle_cap
    std::uint64_t oracle_cap = 100'000'000;
    /// Height bound for the points paired with Q_t. By default T_E(t), the
    /// range in which distinct points are guaranteed distinct classes; any
    /// value gives a valid direct count.
    std::optional<double> pair_height;
    std::uint64_t factor_bound = 1'000'000'000ULL;
    unsigned threads = 1;
};

struct BoundReport
{
    std::optional<Int> t;
    Int D;
    bool fundamental = false;
    std::optional<FundamentalDecomposition> decomposition;
    /// height bound actually used for enumeration
    double pair_height = 0.0;
    std::uint64_t direct_count = 0;
    std::optional<Interval> thm_family;
    std::optional<Interval> thm_general;
    std::optional<Interval> ggz;
    /// number of reduced forms of discriminant -D (h(-D) for fundamental D)
    std::optional<std::uint64_t> class_number_oracle;
    /// H(-D) from the divisor-sum formula
    std::optional<Rational> hurwitz;
    /// formula value equals the 1/Aut-weighted reduced-form count
    std::optional<bool> hurwitz_consistent;
    std::vector<HypothesisCheck> hypotheses;
    /// set when part of the row could not be computed; every column that
    /// could be computed is still filled in
    std::string error;

    /// "thm" when a theorem bound exceeds ggz, "ggz" when ggz is at least
    /// every present theorem bound, "-" when no theorem bound is present
    std::string bound_vs_ggz() const;
    /// direct count and present bounds do not exceed the oracle
    bool sound() const;
};

/// Rows for t_min <= t <= t_max in ascending t, one per t; rows with
/// D_E(t) <= 0 carry an error.
std::vector<BoundReport> scan(const CurveProfile & profile, const Int & t_min, const Int & t_max,
                              const ScanOptions & options = {});
BoundReport scan_row(const CurveProfile & profile, const Int & t, const ScanOptions & options = {});

/// GGZ, the oracle and Hurwitz columns for a bare D; with a profile and Q the
/// general theorem bound is added.
BoundReport bounds_for_discriminant(const Int & D, const ScanOptions & options = {},
                                    const CurveProfile * profile = nullptr, const TwistPoint * Q = nullptr);

/// Smallest scanned t such that h(-D) > c log(D)^e for every fundamental row
/// with oracle at or after it; absent when the last such row fails.
std::optional<Int> inequality_threshold(const std::vector<BoundReport> & rows, double c, double e);

std::string render_table(const std::vector<BoundReport> & rows);
/// Header t,D,fundamental,direct_count,thm_family,thm_general,ggz,h_oracle,hurwitz,bound_vs_ggz
std::string render_csv(const std::vector<BoundReport> & rows);
/// shortest round-trip-safe text for a bound column (midpoint, 12 significant digits)
std::string format_bound(const std::optional<Interval> & x);

} // namespace ecpair
