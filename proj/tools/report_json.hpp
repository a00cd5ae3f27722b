#pragma once

#include <string>
#include <vector>

#include "ecpair/scan.hpp"

namespace ecpair::cli {

/// Rows as a JSON array, including the hypotheses log and row errors.
std::string render_json(const std::vector<BoundReport> & rows);

} // namespace ecpair::cli
