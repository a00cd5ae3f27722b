#include "ecpair/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "ecpair/errors.hpp"
#include "ecpair/pairing.hpp"

namespace ecpair {

namespace {

void add_hypotheses(BoundReport & row, const std::string & prefix, const BoundResult & res)
{
    for (const auto & h : res.hypotheses)
        row.hypotheses.push_back({prefix + h.name, h.satisfied, h.margin});
}

// ggz, fundamental flag, oracle and Hurwitz columns; ggz and the
// fundamental test share one factorization
void classify(BoundReport & row, const ScanOptions & options)
{
    std::vector<PrimePower> factors = factorize(row.D, options.factor_bound);
    row.ggz = ggz_bound(row.D, factors);
    row.fundamental = is_fundamental(row.D, factors);
    row.hypotheses.push_back({"fundamental discriminant", row.fundamental, 0.0});
    if (!fits_u64(row.D))
        return;
    const std::uint64_t D = to_u64(row.D);
    if (is_discriminant(D))
        row.decomposition = fundamental_decomposition(D);
    if (D > options.oracle_cap || !is_discriminant(D))
        return;
    FormCensus census = form_census(D);
    row.class_number_oracle = census.count;
    if (row.fundamental)
        row.hurwitz = Rational(census.count, unit_weight(D));
    else
        row.hurwitz = hurwitz_class_number(D);
    row.hurwitz->canonicalize();
    row.hurwitz_consistent = *row.hurwitz == census.weighted;
}

std::string error_text(const Error & e)
{
    return e.what();
}

} // namespace

std::string BoundReport::bound_vs_ggz() const
{
    if (!ggz || (!thm_family && !thm_general))
        return "-";
    for (const auto & b : {thm_family, thm_general})
        if (b && b->value() > ggz->value())
            return "thm";
    return "ggz";
}

bool BoundReport::sound() const
{
    if (!class_number_oracle)
        return true;
    const double h = static_cast<double>(*class_number_oracle);
    if (direct_count > *class_number_oracle)
        return false;
    for (const auto & b : {thm_family, thm_general})
        if (b && b->value() > h)
            return false;
    return true;
}

BoundReport scan_row(const CurveProfile & profile, const Int & t, const ScanOptions & options)
{
    BoundReport row;
    row.t = t;
    try {
        row.D = family_discriminant(profile.curve, t);
    } catch (const Error & e) {
        row.D = 4 * (t * t * t + profile.curve.a4() * t - profile.curve.a6());
        row.error = error_text(e);
        return row;
    }
    // an unfactorable D loses its ggz and oracle columns, not the bounds
    try {
        classify(row, options);
    } catch (const Error & e) {
        row.error = error_text(e);
    }
    try {
        BoundResult fam = thm_family_bound(profile, t);
        add_hypotheses(row, "family: ", fam);
        row.thm_family = fam.value;

        TwistPoint Q = family_twist_point(profile.curve, t);
        BoundResult gen = thm_general_bound(profile, Q);
        add_hypotheses(row, "general: ", gen);
        row.thm_general = gen.value;

        double T = 0.0;
        if (options.pair_height)
            T = *options.pair_height;
        else if (row.D > Int((t + 1) * (t + 1)) && t + 1 > 0)
            T = std::max(0.0, T_family(profile, t).value());
        row.pair_height = T;
        if (T > 0.0) {
            auto points = enumerate_points_below(profile, T);
            row.direct_count = pair_point_set(profile.curve, Q, points).size();
        }
    } catch (const Error & e) {
        row.error += (row.error.empty() ? "" : "; ") + error_text(e);
    }
    return row;
}

std::vector<BoundReport> scan(const CurveProfile & profile, const Int & t_min, const Int & t_max,
                              const ScanOptions & options)
{
    if (t_max < t_min)
        return {};
    Int span = t_max - t_min + 1;
    if (!fits_u64(span) || span > 100'000'000)
        raise(ErrorKind::OutOfRange, "t-range too long");
    const std::size_t n = to_u64(span);
    std::vector<BoundReport> rows(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++)
            rows[i] = scan_row(profile, Int(t_min + Int(static_cast<unsigned long>(i))), options);
    };
    unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(n)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < threads; ++k)
            pool.emplace_back(worker);
        for (auto & th : pool)
            th.join();
    }
    return rows;
}

BoundReport bounds_for_discriminant(const Int & D, const ScanOptions & options, const CurveProfile * profile,
                                    const TwistPoint * Q)
{
    if (D <= 0)
        raise(ErrorKind::DomainError, "D must be positive");
    BoundReport row;
    row.D = D;
    try {
        classify(row, options);
        if (profile && Q) {
            BoundResult gen = thm_general_bound(*profile, *Q);
            add_hypotheses(row, "general: ", gen);
            row.thm_general = gen.value;
        }
    } catch (const Error & e) {
        row.error = error_text(e);
    }
    return row;
}

std::optional<Int> inequality_threshold(const std::vector<BoundReport> & rows, double c, double e)
{
    std::optional<Int> threshold;
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        if (!it->fundamental || !it->class_number_oracle || !it->t)
            continue;
        double rhs = c * std::pow(log_abs(it->D).value, e);
        if (static_cast<double>(*it->class_number_oracle) > rhs)
            threshold = *it->t;
        else
            break;
    }
    return threshold;
}

std::string format_bound(const std::optional<Interval> & x)
{
    if (!x)
        return {};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x->value());
    return buf;
}

namespace {

std::vector<std::vector<std::string>> cells(const std::vector<BoundReport> & rows)
{
    std::vector<std::vector<std::string>> out;
    for (const auto & r : rows) {
        std::vector<std::string> c;
        c.push_back(r.t ? r.t->get_str() : std::string());
        c.push_back(r.D.get_str());
        c.push_back(r.ggz ? (r.fundamental ? "true" : "false") : std::string());
        c.push_back(r.error.empty() ? std::to_string(r.direct_count) : std::string());
        c.push_back(format_bound(r.thm_family));
        c.push_back(format_bound(r.thm_general));
        c.push_back(format_bound(r.ggz));
        c.push_back(r.class_number_oracle ? std::to_string(*r.class_number_oracle) : std::string());
        c.push_back(r.hurwitz ? to_string(*r.hurwitz) : std::string());
        c.push_back(r.bound_vs_ggz());
        out.push_back(std::move(c));
    }
    return out;
}

const std::vector<std::string> kColumns = {"t",     "D",       "fundamental", "direct_count", "thm_family", "thm_general",
                                           "ggz",   "h_oracle", "hurwitz",    "bound_vs_ggz"};

// display width of an ASCII or box-drawing string
std::size_t width(const std::string & s)
{
    std::size_t w = 0;
    for (unsigned char ch : s)
        if ((ch & 0xC0) != 0x80)
            ++w;
    return w;
}

} // namespace

std::string render_csv(const std::vector<BoundReport> & rows)
{
    std::ostringstream out;
    for (std::size_t i = 0; i < kColumns.size(); ++i)
        out << (i ? "," : "") << kColumns[i];
    out << '\n';
    for (const auto & c : cells(rows)) {
        for (std::size_t i = 0; i < c.size(); ++i)
            out << (i ? "," : "") << c[i];
        out << '\n';
    }
    return out.str();
}

std::string render_table(const std::vector<BoundReport> & rows)
{
    auto body = cells(rows);
    std::vector<std::size_t> w(kColumns.size());
    for (std::size_t i = 0; i < kColumns.size(); ++i)
        w[i] = width(kColumns[i]);
    for (const auto & c : body)
        for (std::size_t i = 0; i < c.size(); ++i)
            w[i] = std::max(w[i], width(c[i]));

    std::ostringstream out;
    auto line = [&](const std::vector<std::string> & c) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            out << (i ? " │ " : "") << std::string(w[i] - width(c[i]), ' ') << c[i];
        }
        out << '\n';
    };
    line(kColumns);
    for (std::size_t i = 0; i < w.size(); ++i) {
        out << (i ? "─┼─" : "");
        for (std::size_t k = 0; k < w[i]; ++k)
            out << "─";
    }
    out << '\n';
    for (const auto & c : body)
        line(c);
    bool any_error = false;
    for (const auto & r : rows)
        any_error |= !r.error.empty();
    if (any_error) {
        out << '\n';
        for (const auto & r : rows)
            if (!r.error.empty())
                out << "t = " << (r.t ? r.t->get_str() : std::string("-")) << ": " << r.error << '\n';
    }
    return out.str();
}

} // namespace ecpair
