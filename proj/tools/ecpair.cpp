#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ecpair/bounds.hpp"
#include "ecpair/catalog.hpp"
#include "ecpair/errors.hpp"
#include "ecpair/pairing.hpp"
#include "ecpair/qforms.hpp"
#include "ecpair/scan.hpp"
#include "report_json.hpp"

using namespace ecpair;

namespace {

// "(a, b)" or "(a, b, c)" -> integers
std::vector<Int> parse_tuple(const std::string & text)
{
    static const std::regex tuple(R"(\s*\(?\s*(-?\d+)\s*,\s*(-?\d+)\s*(?:,\s*(-?\d+)\s*)?\)?\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, tuple))
        raise(ErrorKind::ParseError, "expected (a, b) or (a, b, c), got '" + text + "'");
    std::vector<Int> out{parse_int(m[1].str()), parse_int(m[2].str())};
    if (m[3].matched)
        out.push_back(parse_int(m[3].str()));
    return out;
}

RationalPoint parse_point(const std::string & text)
{
    auto v = parse_tuple(text);
    return RationalPoint::from_triple(v[0], v[1], v.size() == 3 ? v[2] : Int(1));
}

struct CurveArgs
{
    std::string catalog = ECPAIR_DEFAULT_CATALOG;
    std::string label;
    std::string a4, a6;
    std::vector<std::string> generators;

    void attach(CLI::App * app, bool want_generators)
    {
        app->add_option("--catalog", catalog, "curve catalog file")->capture_default_str();
        app->add_option("--label", label, "catalog entry");
        app->add_option("--a4", a4, "coefficient a4 (instead of --label)");
        app->add_option("--a6", a6, "coefficient a6 (instead of --label)");
        if (want_generators)
            app->add_option("--generator,-g", generators, "generator (A, B[, C]); repeat per point");
    }

    bool explicit_curve() const { return !a4.empty() || !a6.empty(); }

    CurveModel curve() const
    {
        if (explicit_curve())
            return CurveModel(parse_int(a4), parse_int(a6));
        return entry().curve();
    }

    CatalogEntry entry() const
    {
        if (explicit_curve()) {
            CatalogEntry e{"cli", parse_int(a4), parse_int(a6), {}, std::nullopt, {}};
            for (const auto & g : generators)
                e.generators.push_back(parse_point(g));
            return e;
        }
        if (label.empty())
            raise(ErrorKind::InvalidArgument, "give --label or --a4/--a6");
        return find_entry(load_catalog(catalog), label);
    }
};

void emit(const std::vector<BoundReport> & rows, const std::string & format, const std::string & output)
{
    std::string text;
    if (format == "csv")
        text = render_csv(rows);
    else if (format == "json")
        text = cli::render_json(rows);
    else
        text = render_table(rows);
    if (output.empty() || output == "-") {
        std::cout << text;
    } else {
        std::ofstream out(output);
        if (!out)
            raise(ErrorKind::InvalidArgument, "cannot write " + output);
        out << text;
    }
}

HeightOptions height_options(double tol)
{
    HeightOptions opt;
    opt.tol = tol;
    return opt;
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Ideal class pairings of elliptic curves and class number lower bounds"};
    app.require_subcommand(1);

    double tol = 1e-6;
    std::string format = "table";
    std::string output;
    std::uint64_t oracle_cap = 100'000'000;
    app.add_option("--tol", tol, "half-width of canonical height intervals")->capture_default_str();

    // pair
    auto * pair = app.add_subcommand("pair", "form F_{P,Q} for one P in E(Q) and Q on E_{-D}");
    CurveArgs pair_curve;
    std::string p_text, q_text, D_text, ell_text;
    pair_curve.attach(pair, false);
    pair->add_option("--P", p_text, "point (A, B[, C]) on E")->required();
    pair->add_option("--Q", q_text, "twist point (u, v[, w])")->required();
    pair->add_option("--D", D_text, "D > 0, twist by -D")->required();
    pair->add_option("--ell", ell_text, "override the multiplier ell");

    // scan
    auto * scan_cmd = app.add_subcommand("scan", "sweep the discriminants -D_E(t)");
    CurveArgs scan_curve;
    std::string t_min = "2", t_max = "100";
    std::optional<double> pair_height;
    unsigned threads = 1;
    bool threshold = false;
    scan_curve.attach(scan_cmd, true);
    scan_cmd->add_option("--t-min", t_min)->capture_default_str();
    scan_cmd->add_option("--t-max", t_max)->capture_default_str();
    scan_cmd->add_option("--oracle-cap", oracle_cap, "largest D given a class number")->capture_default_str();
    scan_cmd->add_option("--pair-height", pair_height, "height bound for paired points (default T_E(t))");
    scan_cmd->add_option("--threads", threads)->capture_default_str();
    scan_cmd->add_option("--format", format)->check(CLI::IsMember({"table", "csv", "json"}))->capture_default_str();
    scan_cmd->add_option("--output,-o", output, "write here instead of stdout");
    scan_cmd->add_flag("--threshold", threshold, "report the smallest t after which h(-D) > log(D)^(3/2)/20");

    // classnum
    auto * classnum = app.add_subcommand("classnum", "class number oracle for -D");
    std::string cn_D;
    bool list_forms = false;
    classnum->add_option("D", cn_D, "D > 0")->required();
    classnum->add_flag("--forms", list_forms, "list the reduced forms");

    // bounds
    auto * bounds_cmd = app.add_subcommand("bounds", "GGZ, oracle and general theorem bound for one D");
    CurveArgs bounds_curve;
    std::string b_D, b_Q;
    bounds_curve.attach(bounds_cmd, true);
    bounds_cmd->add_option("D", b_D, "D > 1")->required();
    bounds_cmd->add_option("--Q", b_Q, "integral twist point (u, v) for the general bound");
    bounds_cmd->add_option("--oracle-cap", oracle_cap)->capture_default_str();
    bounds_cmd->add_option("--format", format)->check(CLI::IsMember({"table", "csv", "json"}))->capture_default_str();

    // family
    auto * family = app.add_subcommand("family", "catalog entry for E_{a,b} or E_{a,b^3}");
    std::string fa, fb;
    bool cube = false;
    family->add_option("--a", fa)->required();
    family->add_option("--b", fb)->required();
    family->add_flag("--cube", cube, "use E_{a,b^3} and its three candidates");

    // search
    auto * search = app.add_subcommand("search", "find generators among small integral points");
    CurveArgs search_curve;
    unsigned rank = 1;
    std::string x_bound = "10000";
    search_curve.attach(search, false);
    search->add_option("--rank", rank)->required();
    search->add_option("--x-bound", x_bound)->capture_default_str();

    // catalog
    auto * catalog_cmd = app.add_subcommand("catalog", "validate every entry of a catalog file");
    std::string catalog_path = ECPAIR_DEFAULT_CATALOG;
    catalog_cmd->add_option("--catalog", catalog_path)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        HeightOptions hopt = height_options(tol);
        if (*pair) {
            CurveModel E = pair_curve.curve();
            RationalPoint P = parse_point(p_text);
            auto q = parse_tuple(q_text);
            TwistPoint Q(q[0], q[1], q.size() == 3 ? q[2] : Int(1), parse_int(D_text));
            PairingContext ctx = pairing_context(E, P, Q);
            if (!ell_text.empty())
                ctx = with_ell(ctx, parse_int(ell_text));
            QuadraticForm f = pair_form(ctx);
            Reduction red = reduce(f);
            std::cout << "curve        " << E.str() << '\n'
                      << "P            " << P.str() << '\n'
                      << "Q            " << Q.str() << (Q.rescaled() ? "  (rescaled)" : "") << '\n'
                      << "alpha, G, H  " << ctx.alpha.get_str() << ", " << ctx.G.get_str() << ", "
                      << ctx.Hg.get_str() << '\n'
                      << "ell          " << ctx.ell.get_str() << " (mod " << ctx.ell_step.get_str() << ")\n"
                      << "form         " << f.str() << '\n'
                      << "discriminant " << f.discriminant().get_str() << '\n'
                      << "reduced      " << red.form.str() << '\n';
        } else if (*scan_cmd) {
            CatalogEntry entry = scan_curve.entry();
            CurveProfile profile = build_profile(entry.curve(), entry.generators, hopt);
            ScanOptions sopt;
            sopt.oracle_cap = oracle_cap;
            sopt.pair_height = pair_height;
            sopt.threads = threads;
            auto rows = scan(profile, parse_int(t_min), parse_int(t_max), sopt);
            emit(rows, format, output);
            if (threshold) {
                auto th = inequality_threshold(rows, 1.0 / 20.0, 1.5);
                std::cerr << "h(-D) > log(D)^(3/2)/20 for every fundamental row from t = "
                          << (th ? th->get_str() : std::string("(none)")) << '\n';
            }
        } else if (*classnum) {
            std::uint64_t D = to_u64(parse_int(cn_D));
            if (!is_discriminant(D))
                raise(ErrorKind::InvalidDiscriminant, "-" + cn_D + " is not 0 or 1 mod 4");
            FormCensus census = form_census(D);
            auto dec = fundamental_decomposition(D);
            std::cout << "D            " << D << '\n'
                      << "fundamental  " << (is_fundamental(D) ? "yes" : "no") << '\n'
                      << "D0, f        " << dec.D0 << ", " << dec.f << '\n'
                      << "forms        " << census.count << '\n'
                      << "H(-D)        " << to_string(hurwitz_class_number(D)) << '\n';
            if (list_forms)
                for (const auto & f : reduced_forms(D))
                    std::cout << "  " << f.triple() << '\n';
        } else if (*bounds_cmd) {
            ScanOptions sopt;
            sopt.oracle_cap = oracle_cap;
            Int D = parse_int(b_D);
            std::optional<CurveProfile> profile;
            std::optional<TwistPoint> Q;
            if (!b_Q.empty()) {
                CatalogEntry entry = bounds_curve.entry();
                profile = build_profile(entry.curve(), entry.generators, hopt);
                auto q = parse_tuple(b_Q);
                Q.emplace(q[0], q[1], q.size() == 3 ? q[2] : Int(1), D);
                if (!twist_contains(profile->curve, *Q))
                    raise(ErrorKind::NotOnCurve, Q->str() + " is not on the twist");
            }
            BoundReport row = bounds_for_discriminant(D, sopt, profile ? &*profile : nullptr, Q ? &*Q : nullptr);
            emit({row}, format, "");
            if (format == "table")
                for (const auto & h : row.hypotheses)
                    std::cout << (h.satisfied ? "  ok   " : "  FAIL ") << h.name << "  (margin " << h.margin << ")\n";
        } else if (*family) {
            FamilyCurve fam = family_curve(parse_int(fa), parse_int(fb), cube, hopt);
            CatalogEntry e{"E_" + fa + "," + fb + (cube ? "^3" : ""), fam.curve.a4(), fam.curve.a6(), fam.candidates,
                           std::nullopt, cube ? "cube family candidates" : "family candidates"};
            write_catalog(std::cout, {e});
            if (fam.independent) {
                std::cout << "# regulator " << fam.regulator->str(8) << '\n'
                          << "# family constant " << family_constant(fam).str(8) << '\n';
            } else {
                std::cout << "# candidates not certified independent at this size\n";
            }
        } else if (*catalog_cmd) {
            bool ok = true;
            for (const auto & entry : load_catalog(catalog_path)) {
                try {
                    CatalogValidation v = validate_entry(entry, hopt);
                    std::cout << entry.label << ": " << entry.curve().str() << ", rank >= " << v.profile.rank()
                              << ", regulator " << v.profile.regulator.str(8) << " (PARI normalization "
                              << v.profile.bsd_regulator().str(8) << ")";
                    if (v.regulator_matches) {
                        std::cout << (*v.regulator_matches ? ", matches " : ", DOES NOT MATCH ") << *entry.regulator;
                        ok &= *v.regulator_matches;
                    }
                    std::cout << '\n';
                } catch (const Error & e) {
                    ok = false;
                    std::cout << entry.label << ": error: " << e.what() << '\n';
                }
            }
            return ok ? 0 : 1;
        } else if (*search) {
            CurveModel E = search_curve.curve();
            GeneratorSearch res = search_generators(E, rank, parse_int(x_bound), hopt);
            CatalogEntry e{search_curve.label.empty() ? "searched" : search_curve.label, E.a4(), E.a6(), res.basis,
                           std::nullopt, "minimal regulator among small integral points"};
            write_catalog(std::cout, {e});
            Interval bsd = res.regulator * Interval(std::ldexp(1.0, static_cast<int>(rank)));
            std::cout << "# regulator " << res.regulator.str(8) << " (PARI normalization " << bsd.str(8) << ")\n";
        }
    } catch (const Error & e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
