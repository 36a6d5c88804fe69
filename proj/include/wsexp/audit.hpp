#pragma once

#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "wsexp/expansion.hpp"
#include "wsexp/graph.hpp"
#include "wsexp/population.hpp"

namespace wsexp {

// Per-class expansion measurement plus pseudolabel-correction and coverage
// bound evaluation over a set of trained classifiers.
struct AuditConfig {
    double eta = 0.0;
    double q = 0.0;
    // Measure eta-robust masses and use them in gates and values; default
    // follows the convention of reporting bounds with the robustness terms
    // set to zero.
    bool strict_robustness = false;
    // Empirical mode: expansions are estimated from the oracle pairs and the
    // sample pool instead of computed exactly. Families drop the robustness
    // intersection (not derivable from samples), so strict_robustness is
    // incompatible with this mode.
    bool empirical = false;
    std::unordered_map<PointIndex, PointIndex> oracle_pairs;  // source -> neighbor
    std::vector<PointIndex> sample_pool;                      // denominator sample ids
};

// The report's "applicable_any" field tells whether any class produced an
// applicable bound (the CLI maps it to its exit status).
nlohmann::json audit_report(const Population& pop, const ExampleGraph& g,
                            const std::vector<LabelAssignment>& predictions,
                            const AuditConfig& cfg);

}  // namespace wsexp
