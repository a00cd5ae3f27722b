#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ecpair/curve.hpp"
#include "ecpair/heights.hpp"

namespace ecpair {

/// One [curve] block of a catalog file:
///
///   [curve]
///   label = rank3-16-1
///   a4 = -16
///   a6 = 1
///   generators = (-2, 5, 1) (11, 34, 1) (26, 131, 1)
///   regulator = 0.930
///   notes = free text
///
/// Generators are (A, B, C) triples naming (A/C^2, B/C^3). The optional
/// regulator is in the PARI/LMFDB normalization, i.e. it is compared with
/// CurveProfile::bsd_regulator(). '#' starts a comment.
struct CatalogEntry
{
    std::string label;
    Int a4, a6;
    std::vector<RationalPoint> generators;
    std::optional<std::string> regulator; // as written, so its precision is known
    std::string notes;

    CurveModel curve() const { return CurveModel(a4, a6); }
};

std::vector<CatalogEntry> parse_catalog(std::istream & in, const std::string & source = "<catalog>");
std::vector<CatalogEntry> load_catalog(const std::filesystem::path & path);
void write_catalog(std::ostream & out, const std::vector<CatalogEntry> & entries);
/// NotFound is reported as InvalidArgument.
const CatalogEntry & find_entry(const std::vector<CatalogEntry> & entries, const std::string & label);

struct CatalogValidation
{
    CurveProfile profile;
    /// set when the entry lists a regulator
    std::optional<bool> regulator_matches;
};

/// Generators on the curve (NotOnCurve) and independent (DependentPoints);
/// compares the listed regulator, if any, to within one unit in its last
/// written digit plus the certified error.
CatalogValidation validate_entry(const CatalogEntry & entry, const HeightOptions & opt = {});

struct GeneratorSearch
{
    std::vector<RationalPoint> basis;
    Interval regulator;
    /// non-torsion integral points examined, by increasing canonical height
    std::vector<RationalPoint> candidates;
};

/// Integral points with |x| <= x_bound, y > 0; the independent rank-subset of
/// the lowest-height candidates with the smallest regulator. A subset with
/// index n in E(Q)/E_tor has regulator n^2 R, so this is a basis whenever the
/// candidates contain one. max_candidates limits the subset search.
GeneratorSearch search_generators(const CurveModel & E, unsigned rank, const Int & x_bound = 10'000,
                                  const HeightOptions & opt = {}, std::size_t max_candidates = 12);

} // namespace ecpair
