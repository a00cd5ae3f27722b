// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "ecpair/bounds.hpp"
#include "ecpair/catalog.hpp"
#include "ecpair/errors.hpp"
#include "ecpair/heights.hpp"
#include "ecpair/pairing.hpp"
#include "ecpair/qforms.hpp"
#include "ecpair/scan.hpp"
#include "fuzz.hpp"
#include "oracles.hpp"

using namespace ecpair;

namespace {

struct Outcome
{
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string & what)
    {
        if (!cond) {
            if (ok)
                detail = what;
            ok = false;
        }
    }
};

struct Criterion
{
    int number;
    std::string title;
    double limit_seconds; // 0 for no limit
    std::function<Outcome()> run;
};

std::string fmt(const char * f, double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

long long as_ll(const Int & n)
{
    return static_cast<long long>(to_i64(n));
}

QuadraticForm qf(long a, long b, long c)
{
    return {Int(a), Int(b), Int(c)};
}

const CurveProfile & rank3_profile()
{
    static const CurveProfile p = [] {
        auto entries = load_catalog(ECPAIR_CATALOG);
        const auto & e = find_entry(entries, "rank3-16-1");
        return build_profile(e.curve(), e.generators);
    }();
    return p;
}

unsigned worker_count()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

Outcome worked_example()
{
    Outcome out;
    CurveModel E(-4, 9);
    TwistPoint Q(-3, 1, 1, 24);
    auto f1 = pair_form(with_ell(pairing_context(E, RationalPoint::integral(0, 3), Q), Int(2)));
    auto f2 = pair_form(with_ell(pairing_context(E, RationalPoint::integral(-2, 3), Q), Int(2)));
    out.require(f1 == qf(3, 12, 14), "F_{P1,Q} = " + f1.str());
    out.require(f2 == qf(1, 8, 22), "F_{P2,Q} = " + f2.str());
    out.require(f1.discriminant() == -24 && f2.discriminant() == -24, "discriminant");
    out.require(reduce(f1).form != reduce(f2).form, "reductions agree");
    out.require(class_number(24) == 2 && oracle::class_count(24) == 2, "h(-24)");
    out.detail = f1.str() + ", " + f2.str() + "; reduced " + reduce(f1).form.str() + ", " + reduce(f2).form.str() +
                 "; h(-24) = 2";
    return out;
}

Outcome class_number_one()
{
    Outcome out;
    std::vector<std::uint64_t> ones;
    int fundamentals = 0;
    for (std::uint64_t D = 3; D <= 200; ++D) {
        bool fund = is_fundamental(D);
        out.require(fund == oracle::fundamental(static_cast<long long>(D)), "fundamental flag at " + std::to_string(D));
        if (!fund)
            continue;
        ++fundamentals;
        std::uint64_t h = class_number(D);
        out.require(h == static_cast<std::uint64_t>(oracle::class_count(static_cast<long long>(D))),
                    "oracle disagrees at " + std::to_string(D));
        if (h == 1)
            ones.push_back(D);
    }
    out.require(ones == std::vector<std::uint64_t>{3, 4, 7, 8, 11, 19, 43, 67, 163}, "class number one list");
    if (out.ok)
        out.detail = "h = 1 exactly for D in {3,4,7,8,11,19,43,67,163}; h >= 2 for the other " +
                     std::to_string(fundamentals - 9) + " fundamental D <= 200";
    return out;
}

Outcome regulator_reproduction()
{
    Outcome out;
    HeightOptions opt;
    opt.tol = 2.5e-7;
    GeneratorSearch s = search_generators(CurveModel(-16, 1), 3, 10000, opt);
    Interval bsd = Interval(8.0) * s.regulator;
    std::string basis;
    for (const auto & P : s.basis)
        basis += P.str() + " ";
    out.require(std::abs(bsd.value() - 0.930) <= 0.01, "regulator " + bsd.str(8));
    out.require(bsd.width() <= 1e-4, "width " + fmt("%.3g", bsd.width()));
    if (out.ok)
        out.detail = "basis " + basis + "regulator " + bsd.str(8) + " (width " + fmt("%.2g", bsd.width()) + ")";
    return out;
}

// rows of the t in [2, 300] sweep, shared by criteria 4, 5 and 9
const std::vector<BoundReport> & sweep(std::optional<double> pair_height)
{
    static std::map<std::optional<double>, std::vector<BoundReport>> cache;
    auto it = cache.find(pair_height);
    if (it != cache.end())
        return it->second;
    ScanOptions opt;
    opt.oracle_cap = 200'000'000;
    opt.pair_height = pair_height;
    opt.threads = worker_count();
    return cache[pair_height] = scan(rank3_profile(), Int(2), Int(300), opt);
}

Outcome soundness_sweep()
{
    Outcome out;
    int fundamental = 0, nonzero = 0, with_thm = 0;
    for (auto height : {std::optional<double>{}, std::optional<double>{4.0}}) {
        for (const auto & r : sweep(height)) {
            if (r.D <= 0)
                continue;
            out.require(r.error.empty(), "t = " + r.t->get_str() + ": " + r.error);
            if (!r.fundamental)
                continue;
            ++fundamental;
            long long h = oracle::class_count(as_ll(r.D));
            out.require(r.class_number_oracle && *r.class_number_oracle == static_cast<std::uint64_t>(h),
                        "class number at t = " + r.t->get_str());
            out.require(r.direct_count <= static_cast<std::uint64_t>(h),
                        "direct count " + std::to_string(r.direct_count) + " > h at t = " + r.t->get_str());
            nonzero += r.direct_count > 0;
            if (r.thm_family) {
                ++with_thm;
                out.require(r.thm_family->value() <= static_cast<double>(h), "family bound at t = " + r.t->get_str());
            }
        }
    }
    if (out.ok)
        out.detail = std::to_string(fundamental) + " fundamental rows over two passes (default and pair height 4), " +
                     std::to_string(nonzero) + " with a nonzero direct count, " + std::to_string(with_thm) +
                     " with a certified family bound; 0 violations";
    return out;
}

Outcome inequality_from_threshold()
{
    Outcome out;
    const auto & rows = sweep(std::nullopt);
    auto threshold = inequality_threshold(rows, 1.0 / 20.0, 1.5);
    out.require(threshold.has_value(), "no threshold in range");
    if (!threshold)
        return out;
    int checked = 0;
    for (const auto & r : rows) {
        if (r.D <= 0 || *r.t < *threshold)
            continue;
        long long D = as_ll(r.D);
        if (!oracle::fundamental(D))
            continue;
        ++checked;
        double rhs = std::pow(std::log(static_cast<double>(D)), 1.5) / 20.0;
        out.require(static_cast<double>(oracle::class_count(D)) > rhs, "fails at t = " + r.t->get_str());
    }
    if (out.ok)
        out.detail = "threshold t = " + threshold->get_str() + "; h(-D) > log(D)^(3/2)/20 on all " +
                     std::to_string(checked) + " fundamental rows from there to t = 300";
    return out;
}

Outcome hurwitz_equivalence()
{
    Outcome out;
    int n = 0;
    for (std::uint64_t D = 3; D <= 5000; ++D) {
        if (!is_discriminant(D))
            continue;
        ++n;
        out.require(hurwitz_class_number(D) == oracle::weighted_count(static_cast<long long>(D)),
                    "H(-" + std::to_string(D) + ")");
    }
    if (out.ok)
        out.detail = std::to_string(n) + " discriminants, exact rational equality";
    return out;
}

Outcome pairing_fuzz()
{
    Outcome out;
    std::mt19937_64 rng(20240601);
    int cases = 0, non_integral_P = 0, non_integral_Q = 0, even = 0, shifts = 0;
    while (cases < 1000) {
        auto c = fuzz::random_case(rng);
        if (!c)
            continue;
        ++cases;
        non_integral_P += c->P.C() > 1;
        non_integral_Q += c->Q.w() > 1;
        std::string where = "case " + std::to_string(cases) + " (" + c->E.str() + ", P = " + c->P.str() +
                            ", Q = " + c->Q.str() + ")";
        try {
            auto ctx = pairing_context(c->E, c->P, c->Q);
            even += ctx.even_branch();
            auto f = pair_form(ctx);
            auto formula = fuzz::form_by_formula(ctx, ctx.ell);
            out.require(formula && *formula == f, "not integral: " + where);
            out.require(f.discriminant() == -c->Q.D(), "discriminant: " + where);
            out.require(f.a > 0 && f.c > 0, "not positive definite: " + where);
            for (long s : {-3L, -1L, 1L, 2L, 5L}) {
                auto g = pair_form(with_ell(ctx, ctx.ell + s * ctx.ell_step));
                out.require(fuzz::form_by_formula(ctx, ctx.ell + s * ctx.ell_step).has_value(), "shift: " + where);
                out.require(reduce(g).form == reduce(f).form, "shift not equivalent: " + where);
                ++shifts;
            }
        } catch (const Error & e) {
            out.require(false, where + ": " + e.what());
        }
    }
    if (out.ok)
        out.detail = std::to_string(cases) + " cases (" + std::to_string(non_integral_P) + " with C > 1, " +
                     std::to_string(non_integral_Q) + " with w > 1, " + std::to_string(even) + " even branch), " +
                     std::to_string(shifts) + " ell shifts; 0 failures";
    return out;
}

std::vector<std::vector<double>> midpoints(const GramMatrix & g)
{
    std::vector<std::vector<double>> m(g.size(), std::vector<double>(g.size()));
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            m[i][j] = g[i][j].value();
    return m;
}

Outcome counting_bounds()
{
    Outcome out;
    auto entries = load_catalog(ECPAIR_CATALOG);
    std::string summary;
    for (const char * label : {"rank2-0-17", "rank3-16-1"}) {
        const auto & entry = find_entry(entries, label);
        CurveProfile p = build_profile(entry.curve(), entry.generators);
        auto G = midpoints(p.gram);
        std::vector<RationalPoint> by_height = p.basis;
        std::sort(by_height.begin(), by_height.end(), [&](const RationalPoint & a, const RationalPoint & b) {
            return canonical_height(p.curve, a, p.options).value < canonical_height(p.curve, b, p.options).value;
        });
        const double quarter_d = p.diameter.hi() / 4;
        int grid = 0, subset_checks = 0;
        for (double T0 : {1.0, 1.5, 2.0, 3.0, 5.0, 8.0, 12.0}) {
            if (T0 <= quarter_d)
                continue;
            // move T off any lattice norm so the count is unambiguous
            double T = T0;
            while (oracle::lattice_count(G, T - 1e-4) != oracle::lattice_count(G, T + 1e-4))
                T += 0.0137;
            ++grid;
            std::size_t count = enumerate_points_detailed(p, T).size();
            long long brute = oracle::lattice_count(G, T) * static_cast<long long>(p.torsion_order());
            std::string at = std::string(label) + " at T = " + fmt("%.4f", T);
            out.require(static_cast<long long>(count) == brute,
                        "enumerated " + std::to_string(count) + " vs box " + std::to_string(brute) + ", " + at);
            Interval b = count_lower_bound(p, T);
            out.require(b.value() <= static_cast<double>(count), "lattice bound exceeds count, " + at);
            // the full basis and, for rank 3, its two lowest points
            for (std::size_t m = p.rank(); m >= 2 && m + 1 >= p.rank(); --m) {
                std::vector<RationalPoint> sub(by_height.begin(), by_height.begin() + static_cast<std::ptrdiff_t>(m));
                try {
                    Interval s = count_lower_bound_subset(p.torsion_order(), sub, p.curve, T, p.options);
                    out.require(s.value() <= static_cast<double>(count), "subset bound exceeds count, " + at);
                    ++subset_checks;
                } catch (const Error & e) {
                    if (e.kind() != ErrorKind::HypothesisFailed)
                        throw;
                }
            }
        }
        summary += std::string(label) + ": " + std::to_string(grid) + " grid values, " +
                   std::to_string(subset_checks) + " subset bounds; ";
    }
    if (out.ok)
        out.detail = summary + "counts equal the box oracle";
    return out;
}

Outcome ggz_evaluation()
{
    Outcome out;
    std::string values;
    for (long D : {7L, 24L, 163L, 3L * 5 * 7 * 11}) {
        long double hand = std::log(static_cast<long double>(D)) / 7000.0L;
        for (long long p : oracle::prime_divisors(D))
            if (p != D)
                hand *= 1.0L - static_cast<long double>(oracle::floor_two_sqrt(p)) / static_cast<long double>(p + 1);
        double got = ggz_bound(Int(D)).value();
        double rel = std::abs(static_cast<double>((got - hand) / hand));
        out.require(rel < 5e-13, "D = " + std::to_string(D) + ": " + fmt("%.15g", got));
        values += std::to_string(D) + " -> " + fmt("%.12g", got) + "; ";
    }
    // the comparison column: every positive-D sweep row carries a verdict,
    // and a row with a certified theorem bound compares it against ggz
    for (const auto & r : sweep(std::nullopt))
        if (r.D > 0)
            out.require(r.ggz && !r.bound_vs_ggz().empty(), "column empty at t = " + r.t->get_str());
    std::optional<BoundReport> both;
    for (long k = 0; k < 50 && !both; ++k) {
        BoundReport r = scan_row(rank3_profile(), Int("1000000000000") + k);
        if (r.ggz && r.thm_family)
            both = r;
    }
    out.require(both && both->bound_vs_ggz() != "-", "no row with both bounds");
    if (out.ok)
        out.detail = values + "bound_vs_ggz = " + both->bound_vs_ggz() + " at t = " + both->t->get_str();
    return out;
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {1, "worked example", 1.0, worked_example},
        {2, "class number one list", 1.0, class_number_one},
        {3, "regulator of y^2 = x^3 - 16x + 1", 30.0, regulator_reproduction},
        {4, "soundness sweep t in [2, 300]", 600.0, soundness_sweep},
        {5, "h(-D) > log(D)^(3/2)/20 threshold", 0.0, inequality_from_threshold},
        {6, "Hurwitz formula equivalence", 60.0, hurwitz_equivalence},
        {7, "pairing fuzz integrality", 0.0, pairing_fuzz},
        {8, "counting bounds", 120.0, counting_bounds},
        {9, "GGZ evaluation", 0.0, ggz_evaluation},
    };
    int failures = 0;
    for (const auto & c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception & e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
            o.ok = false;
            o.detail += " (over the " + fmt("%g", c.limit_seconds) + " s limit)";
        }
        failures += !o.ok;
        std::printf("%s  %d. %s [%.2f s]: %s\n", o.ok ? "PASS" : "FAIL", c.number, c.title.c_str(), secs,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return failures;
}
