#include "ecpair/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <regex>
#include <string_view>

#include "ecpair/errors.hpp"

namespace ecpair {

namespace {

std::string trim(const std::string & s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<RationalPoint> parse_generators(const std::string & text, const std::string & where)
{
    static const std::regex triple(R"(\(\s*(-?\d+)\s*,\s*(-?\d+)\s*(?:,\s*(-?\d+)\s*)?\))");
    std::vector<RationalPoint> out;
    std::string rest = text;
    std::smatch m;
    while (std::regex_search(rest, m, triple)) {
        if (!trim(m.prefix().str()).empty())
            raise(ErrorKind::ParseError, where + ": unexpected '" + trim(m.prefix().str()) + "' in generators");
        Int C = m[3].matched ? parse_int(m[3].str()) : Int(1);
        out.push_back(RationalPoint::from_triple(parse_int(m[1].str()), parse_int(m[2].str()), C));
        rest = m.suffix().str();
    }
    if (!trim(rest).empty())
        raise(ErrorKind::ParseError, where + ": unexpected '" + trim(rest) + "' in generators");
    return out;
}

void finish_entry(std::vector<CatalogEntry> & out, std::optional<CatalogEntry> & cur, bool has_a4, bool has_a6,
                  const std::string & where)
{
    if (!cur)
        return;
    if (cur->label.empty() || !has_a4 || !has_a6)
        raise(ErrorKind::ParseError, where + ": entry needs label, a4 and a6");
    out.push_back(std::move(*cur));
    cur.reset();
}

// one unit in the last written digit, so both rounded and truncated
// literals ("0.930...") are accepted
double ulp_of_literal(const std::string & lit)
{
    auto dot = lit.find('.');
    if (dot == std::string::npos)
        return 1.0;
    auto digits = lit.size() - dot - 1;
    return std::pow(10.0, -static_cast<double>(digits));
}

} // namespace

std::vector<CatalogEntry> parse_catalog(std::istream & in, const std::string & source)
{
    std::vector<CatalogEntry> out;
    std::optional<CatalogEntry> cur;
    bool has_a4 = false, has_a6 = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string where = source + ":" + std::to_string(lineno);
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line == "[curve]") {
            finish_entry(out, cur, has_a4, has_a6, where);
            cur.emplace();
            has_a4 = has_a6 = false;
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            raise(ErrorKind::ParseError, where + ": expected key = value");
        if (!cur)
            raise(ErrorKind::ParseError, where + ": key outside a [curve] block");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "label")
                cur->label = value;
            else if (key == "a4")
                cur->a4 = parse_int(value), has_a4 = true;
            else if (key == "a6")
                cur->a6 = parse_int(value), has_a6 = true;
            else if (key == "generators")
                cur->generators = parse_generators(value, where);
            else if (key == "regulator") {
                static const std::regex decimal(R"(\d+(\.\d+)?)");
                if (!std::regex_match(value, decimal))
                    raise(ErrorKind::ParseError, where + ": regulator must be a decimal number");
                cur->regulator = value;
            } else if (key == "notes")
                cur->notes = value;
            else
                raise(ErrorKind::ParseError, where + ": unknown key '" + key + "'");
        } catch (const Error & e) {
            if (std::string_view(e.what()).starts_with(where))
                throw;
            raise(ErrorKind::ParseError, where + ": " + e.what());
        }
    }
    finish_entry(out, cur, has_a4, has_a6, source + ":" + std::to_string(lineno));
    return out;
}

std::vector<CatalogEntry> load_catalog(const std::filesystem::path & path)
{
    std::ifstream in(path);
    if (!in)
        raise(ErrorKind::InvalidArgument, "cannot open catalog " + path.string());
    return parse_catalog(in, path.string());
}

void write_catalog(std::ostream & out, const std::vector<CatalogEntry> & entries)
{
    bool first = true;
    for (const auto & e : entries) {
        if (!first)
            out << '\n';
        first = false;
        out << "[curve]\n";
        out << "label = " << e.label << '\n';
        out << "a4 = " << e.a4.get_str() << '\n';
        out << "a6 = " << e.a6.get_str() << '\n';
        out << "generators =";
        for (const auto & P : e.generators)
            out << " (" << P.A().get_str() << ", " << P.B().get_str() << ", " << P.C().get_str() << ")";
        out << '\n';
        if (e.regulator)
            out << "regulator = " << *e.regulator << '\n';
        if (!e.notes.empty())
            out << "notes = " << e.notes << '\n';
    }
}

const CatalogEntry & find_entry(const std::vector<CatalogEntry> & entries, const std::string & label)
{
    for (const auto & e : entries)
        if (e.label == label)
            return e;
    raise(ErrorKind::InvalidArgument, "no catalog entry labelled '" + label + "'");
}

CatalogValidation validate_entry(const CatalogEntry & entry, const HeightOptions & opt)
{
    CurveModel E = entry.curve();
    for (const auto & P : entry.generators)
        if (!on_curve(E, P))
            raise(ErrorKind::NotOnCurve, entry.label + ": " + P.str() + " is not on " + E.str());
    CatalogValidation v{build_profile(E, entry.generators, opt), std::nullopt};
    if (entry.regulator) {
        double known = std::stod(*entry.regulator);
        Interval bsd = v.profile.bsd_regulator();
        double slack = ulp_of_literal(*entry.regulator);
        v.regulator_matches = bsd.hi() >= known - slack && bsd.lo() <= known + slack;
    }
    return v;
}

GeneratorSearch search_generators(const CurveModel & E, unsigned rank, const Int & x_bound,
                                  const HeightOptions & opt, std::size_t max_candidates)
{
    if (rank == 0)
        raise(ErrorKind::InvalidArgument, "rank must be positive");
    struct Candidate
    {
        RationalPoint P;
        double h;
    };
    // candidates are ranked and subsets compared at a coarse tolerance; a
    // subset of index n has n^2 times the regulator, so 1e-3 separates them
    HeightOptions coarse = opt;
    coarse.tol = std::max(opt.tol, 1e-3);
    std::vector<Candidate> cands;
    for (const auto & P : integral_points(E, x_bound)) {
        if (P.B() == 0 || torsion_point_order(E, P))
            continue;
        cands.push_back({P, canonical_height(E, P, coarse).value});
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Candidate & x, const Candidate & y) { return x.h < y.h; });
    if (cands.size() > max_candidates)
        cands.erase(cands.begin() + static_cast<std::ptrdiff_t>(max_candidates), cands.end());
    if (cands.size() < rank)
        raise(ErrorKind::DependentPoints, "fewer than " + std::to_string(rank) + " integral points found on " + E.str());

    std::vector<RationalPoint> pts;
    for (const auto & c : cands)
        pts.push_back(c.P);
    GramMatrix full = height_gram(E, pts, coarse);

    // every independent subset, then the one of smallest regulator; subsets
    // within a factor 2 of it have the same index, and among those the one of
    // smallest total height is cheapest to refine
    struct Subset
    {
        std::vector<std::size_t> idx;
        double reg;
        double height_sum;
    };
    std::vector<Subset> subsets;
    const std::size_t n = pts.size();
    std::vector<std::size_t> idx(rank);
    for (std::size_t i = 0; i < rank; ++i)
        idx[i] = i;
    while (true) {
        GramMatrix g(rank, std::vector<Interval>(rank));
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = 0; j < rank; ++j)
                g[i][j] = full[idx[i]][idx[j]];
        try {
            double reg = regulator_from_gram(g).value();
            double hs = 0.0;
            for (auto i : idx)
                hs += cands[i].h;
            subsets.push_back({idx, reg, hs});
        } catch (const Error & e) {
            if (e.kind() != ErrorKind::DependentPoints)
                throw;
        }
        // next combination in lexicographic order
        std::size_t k = rank;
        while (k > 0 && idx[k - 1] == n - rank + (k - 1))
            --k;
        if (k == 0)
            break;
        ++idx[k - 1];
        for (std::size_t j = k; j < rank; ++j)
            idx[j] = idx[j - 1] + 1;
    }
    if (subsets.empty())
        raise(ErrorKind::DependentPoints, "no independent " + std::to_string(rank) + "-subset among the candidates");
    double min_reg = subsets.front().reg;
    for (const auto & s : subsets)
        min_reg = std::min(min_reg, s.reg);
    const Subset * pick = nullptr;
    for (const auto & s : subsets)
        if (s.reg < 2 * min_reg && (!pick || s.height_sum < pick->height_sum))
            pick = &s;

    GeneratorSearch best{{}, Interval(0.0), pts};
    for (auto i : pick->idx)
        best.basis.push_back(pts[i]);
    best.regulator = regulator(E, best.basis, opt);
    return best;
}

} // namespace ecpair
