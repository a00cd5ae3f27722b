#include "report_json.hpp"

#include <json.hpp>

namespace ecpair::cli {

namespace {

nlohmann::json bound(const std::optional<Interval> & x)
{
    if (!x)
        return nullptr;
    return {{"value", x->value()}, {"lo", x->lo()}, {"hi", x->hi()}};
}

} // namespace

std::string render_json(const std::vector<BoundReport> & rows)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto & r : rows) {
        nlohmann::json j;
        j["t"] = r.t ? nlohmann::json(r.t->get_str()) : nlohmann::json(nullptr);
        j["D"] = r.D.get_str();
        j["fundamental"] = r.fundamental;
        if (r.decomposition)
            j["decomposition"] = {{"D0", r.decomposition->D0}, {"f", r.decomposition->f}};
        j["pair_height"] = r.pair_height;
        j["direct_count"] = r.direct_count;
        j["thm_family"] = bound(r.thm_family);
        j["thm_general"] = bound(r.thm_general);
        j["ggz"] = bound(r.ggz);
        j["h_oracle"] = r.class_number_oracle ? nlohmann::json(*r.class_number_oracle) : nlohmann::json(nullptr);
        j["hurwitz"] = r.hurwitz ? nlohmann::json(r.hurwitz->get_str()) : nlohmann::json(nullptr);
        if (r.hurwitz_consistent)
            j["hurwitz_consistent"] = *r.hurwitz_consistent;
        j["bound_vs_ggz"] = r.bound_vs_ggz();
        nlohmann::json hyp = nlohmann::json::array();
        for (const auto & h : r.hypotheses)
            hyp.push_back({{"name", h.name}, {"satisfied", h.satisfied}, {"margin", h.margin}});
        j["hypotheses"] = std::move(hyp);
        if (!r.error.empty())
            j["error"] = r.error;
        out.push_back(std::move(j));
    }
    return out.dump(2) + "\n";
}

} // namespace ecpair::cli
