#ifndef QCURVE_JSON_IO_HPP
#define QCURVE_JSON_IO_HPP

/* Machine-readable output: exact rational strings ("p/q"), never floats. */

#include "qcurve/multidiff.hpp"
#include "qcurve/parser.hpp"
#include "qcurve/wave.hpp"

#include <json.hpp>

namespace qcurve {

using nlohmann::json;

inline json to_json(const FieldElement& x) { return x.str(); }

inline json to_json(const SymTensor& t, const BranchData& bd) {
    json terms = json::array();
    for (const auto& [key, c] : t.terms()) {
        json slots = json::array();
        for (const auto& b : key)
            slots.push_back({{"alpha", bd.points[b.alpha].alpha.str()}, {"k", b.k}});
        terms.push_back({{"slots", slots}, {"coeff", c.str()}});
    }
    return {{"slots_per_term", t.slots()}, {"terms", terms}};
}

inline json to_json(const std::map<std::vector<long>, FieldElement>& table) {
    json rows = json::array();
    for (const auto& [mu, v] : table) rows.push_back({{"mu", mu}, {"count", v.str()}});
    return rows;
}

inline json to_json(const WaveExpansion& w, const std::string& param) {
    json arr = json::array();
    for (size_t k = 0; k < w.S.size(); ++k)
        arr.push_back({{"k", k}, {"S", print_logaug(w.S[k], param)}});
    return {{"coefficients", arr}, {"normalisation", w.normalisation}};
}

} // namespace qcurve

#endif
