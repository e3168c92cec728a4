#pragma once

#include <json.hpp>

#include "hdbound/bound.hpp"
#include "hdbound/estimators.hpp"
#include "hdbound/montecarlo.hpp"
#include "hdbound/norms.hpp"

namespace hdbound {

inline void to_json(nlohmann::json& j, const CompatReport& r) {
    j = {{"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds}};
}

inline void to_json(nlohmann::json& j, const RegimeSpec& r) {
    const char* tag = r.regime == Regime::A ? "a" : (r.regime == Regime::B ? "b" : "c");
    j = {{"C", r.C}, {"k_n", r.k_n}, {"d_n", r.d_n}, {"regime", tag}};
}

inline void to_json(nlohmann::json& j, const BoundReport& r) {
    j = {{"norm", to_string(r.q)},
         {"fd_norm", r.fd_norm},
         {"est_err", r.est_err},
         {"actual", r.actual},
         {"linear_term", r.linear_term},
         {"remainder", r.remainder},
         {"bound", r.bound},
         {"holds", r.holds}};
    if (r.regime) j["regime"] = *r.regime;
    if (r.rate_value) j["rate_value"] = *r.rate_value;
}

inline void to_json(nlohmann::json& j, const Estimate& e) {
    j = {{"beta", std::vector<double>(e.beta.begin(), e.beta.end())},
         {"support", e.support},
         {"lambda", e.lambda},
         {"sigma2", e.sigma2},
         {"iterations", e.iterations},
         {"converged", e.converged}};
}

inline void to_json(nlohmann::json& j, const LambdaDiagnostics& d) {
    j = {{"lambda", d.lambda},
         {"coef", d.coef},
         {"sigma2", d.sigma2},
         {"ic", d.ic},
         {"support_size", d.support_size},
         {"sigma2_floored", d.sigma2_floored}};
}

inline void to_json(nlohmann::json& j, const SimResult& r) {
    j = {{"n", r.cell.n},
         {"s0", r.cell.s0},
         {"p", r.cell.p},
         {"reps", r.cell.reps},
         {"seed", r.cell.seed},
         {"mean_ratio", r.mean_ratio},
         {"ratio_min", r.ratio_min},
         {"ratio_max", r.ratio_max},
         {"mean_selected_c", r.mean_selected_c},
         {"excluded", r.excluded},
         {"sigma2_floored_reps", r.sigma2_floored_reps}};
    if (!r.per_rep_ratios.empty()) j["per_rep_ratios"] = r.per_rep_ratios;
}

inline void to_json(nlohmann::json& j, const SimTable& t) {
    j = nlohmann::json::array();
    for (const auto& r : t.results) j.push_back(r);
}

} // namespace hdbound
