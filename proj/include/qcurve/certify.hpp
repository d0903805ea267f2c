#ifndef QCURVE_CERTIFY_HPP
#define QCURVE_CERTIFY_HPP

/* The acceptance suite: every check the artifact certifies, with its exact
 * expected values, provenance, and a runtime budget.  All comparisons are
 * exact; a criterion fails on any mismatch or on a budget overrun.
 */

#include <optional>
#include <string>
#include <vector>

namespace qcurve {

struct CriterionResult {
    int id = 0;
    std::string name;
    std::string provenance; // closed form / brute force / golden / derived identity
    bool pass = false;
    double seconds = 0.0;
    double budget = 0.0;
    std::string detail; // first failure, or a short summary
};

/* Runs criteria 1..11.  The curve files default to the bundled Catalan and
 * GW(P1, q=1) definitions; paths may override them (the expected values are
 * specific to those curves, so overriding only makes sense with equivalent
 * definitions).
 */
std::vector<CriterionResult> run_acceptance(const std::optional<std::string>& catalan_path = {},
                                            const std::optional<std::string>& gw_path = {});

bool all_passed(const std::vector<CriterionResult>& rs);

} // namespace qcurve

#endif
