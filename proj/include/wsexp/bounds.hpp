#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wsexp/common.hpp"

namespace wsexp {

// Identifiers for the implemented error-bound evaluators.
enum class Theorem {
    fu_baseline,      // closed-form weak supervision baseline P(S)*4a(1-a) + P(T)
    wei_applicability,  // coverage >= 2/3 applicability gate
    plc_main,         // pseudolabel correction, unsimplified form
    plc_simplified,   // pseudolabel correction, delta-simplified form
    coverage_main,    // uncovered-set bound with two expansion rates
    coverage_weak,    // uncovered-set bound from good-side expansion only
    wei_plc,          // bad-to-good expansion pseudolabel correction
};

std::string theorem_name(Theorem t);
std::optional<Theorem> theorem_from_name(const std::string& name);

struct Precondition {
    std::string name;
    double value = 0.0;      // evaluated left-hand side or margin, see detail
    bool satisfied = false;
    std::string detail;
};

// Evaluation result: precondition trail, applicability, and the bound value
// clamped into [0, 1] with explicit flags. raw_value is the formula output
// before clamping; value is present iff applicable.
struct BoundReport {
    Theorem theorem = Theorem::fu_baseline;
    std::map<std::string, double> inputs;
    std::vector<Precondition> preconditions;
    bool applicable = false;
    std::optional<double> value;
    std::optional<double> raw_value;
    bool clamped_low = false;
    bool clamped_high = false;
    std::string note;

    const Precondition* find(const std::string& name) const;
};

// Which classifier gate plc_bound checks: the headline form compares the
// error-or-nonrobust mass against (1 - a + 3ca)/4 (and needs
// q < 3(1-2a)/4); the main form compares against 1 - q - a.
enum class PlcGate { main, headline };

// err(f~, y) <= P(S) * 4a(1-a) + P(T). Always applicable.
BoundReport fu_baseline_bound(double p_covered, double alpha);

// Applicability-only gate: coverage >= 2/3. Produces no value.
BoundReport wei_applicability(double coverage);

// Pseudolabel correction with c' = c / (1 - a + c*a):
//   (err_weak - a(2c'-1) + 2c'a*nonrobust) / (1 - 2c'a).
// gate_event_mass, when supplied, is the exact joint mass
// P(f != weak or f not robust | S_i) and replaces the err+nonrobust proxy in
// the gate. Throws DomainError when alpha is outside (0, 1/2).
BoundReport plc_bound(double c, double q, double alpha, double err_weak, double nonrobust_mass,
                      PlcGate gate = PlcGate::main,
                      std::optional<double> gate_event_mass = std::nullopt);

// Simplified pseudolabel correction for a feasible delta:
//   (2a/(1-2a)) * nonrobust + err_weak + a(1 - 2c*delta),
// feasible when err_weak <= c*a*delta + (1-a)(1-delta). Default delta = 3/4.
BoundReport plc_simplified_bound(double c, double alpha, double err_weak, double nonrobust_mass,
                                 double delta_param = 0.75);

// Uncovered-set bound with separate good-side (c1) and bad-side (c2)
// expansion rates:
//   (1 + a/(cmin/cmax - 2a)) * nonrobust_uncovered
//     + max(q, (err_weak - c2*a) / (c1 - (c1+c2)*a)).
// The first-term coefficient is only required to be well-posed when
// nonrobust_uncovered > 0; with a zero robustness term the intermediate form
// of the bound applies without the cmin/cmax condition.
BoundReport coverage_bound(double c1, double c2, double q, double alpha, double err_weak,
                           double nonrobust_uncovered);

// Weaker uncovered-set bound from good-side expansion alone:
//   nonrobust_uncovered + max(q, err_weak / (c(1-a))). No classifier gate.
BoundReport coverage_bound_weak(double c, double q, double alpha, double err_weak,
                                double nonrobust_uncovered);

// Bad-to-good-expansion pseudolabel correction, applicable only when
// c > a/(1-a) and the classifier gate holds; value
//   2(q*a + nonrobust) + err_weak - a, floored at 0.
BoundReport wei_plc_bound(double c, double q, double alpha, double err_weak,
                          double nonrobust_mass,
                          std::optional<double> gate_event_mass = std::nullopt);

}  // namespace wsexp
