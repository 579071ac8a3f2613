#include "powerlife/lifetime.hpp"

#include <algorithm>

namespace powerlife {

std::vector<ModelComparison> compare(const std::vector<ScenarioDamage>& reports,
                                     double ratio_threshold) {
    std::map<std::pair<std::string, std::string>, std::map<std::string, const ScenarioDamage*>> by_key;
    for (const auto& r : reports) by_key[{r.profile, r.device}][r.model] = &r;

    std::vector<ModelComparison> out;
    for (const auto& [key, models] : by_key) {
        for (const char* required : {"t_o", "t_sw"}) {
            if (!models.count(required))
                throw std::runtime_error("compare: missing scenario '" + key.first + ":" +
                                         required + "' for device " + key.second);
        }
        const ScenarioDamage& to = *models.at("t_o");
        const ScenarioDamage& tsw = *models.at("t_sw");

        ModelComparison c;
        c.profile = key.first;
        c.device = key.second;
        c.D_run_t_o = to.D_run;
        c.D_run_t_sw = tsw.D_run;
        c.D_annual_t_o = to.D_annual;
        c.D_annual_t_sw = tsw.D_annual;
        c.ratio = to.D_run > 0.0 ? tsw.D_run / to.D_run : (tsw.D_run > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
        c.switching_model_required = c.ratio > ratio_threshold;
        out.push_back(c);
    }
    return out;
}

}  // namespace powerlife
