#include "wsexp/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace wsexp {

std::string theorem_name(Theorem t) {
    switch (t) {
        case Theorem::fu_baseline: return "fu-baseline";
        case Theorem::wei_applicability: return "wei-applicability";
        case Theorem::plc_main: return "plc-main";
        case Theorem::plc_simplified: return "plc-simplified";
        case Theorem::coverage_main: return "coverage-main";
        case Theorem::coverage_weak: return "coverage-weak";
        case Theorem::wei_plc: return "wei-plc";
    }
    return "unknown";
}

std::optional<Theorem> theorem_from_name(const std::string& name) {
    for (Theorem t : {Theorem::fu_baseline, Theorem::wei_applicability, Theorem::plc_main,
                      Theorem::plc_simplified, Theorem::coverage_main, Theorem::coverage_weak,
                      Theorem::wei_plc})
        if (theorem_name(t) == name) return t;
    return std::nullopt;
}

const Precondition* BoundReport::find(const std::string& name) const {
    for (const Precondition& p : preconditions)
        if (p.name == name) return &p;
    return nullptr;
}

namespace {

void require_unit_interval(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0) || !std::isfinite(v))
        throw DomainError(std::string(what) + " must lie in [0, 1]");
}

void require_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5))
        throw DomainError("alpha outside (0, 1/2)");
}

void require_nonnegative(double v, const char* what) {
    if (!(v >= 0.0) || !std::isfinite(v))
        throw DomainError(std::string(what) + " must be nonnegative and finite");
}

// Installs raw value + clamped value with flags.
void finish_with_value(BoundReport& r, double raw) {
    r.applicable = true;
    r.raw_value = raw;
    double v = raw;
    if (v < 0.0) {
        v = 0.0;
        r.clamped_low = true;
    }
    if (v > 1.0) {
        v = 1.0;
        r.clamped_high = true;
    }
    r.value = v;
}

bool all_satisfied(const BoundReport& r) {
    for (const Precondition& p : r.preconditions)
        if (!p.satisfied) return false;
    return true;
}

}  // namespace

BoundReport fu_baseline_bound(double p_covered, double alpha) {
    require_unit_interval(p_covered, "P(S)");
    require_unit_interval(alpha, "alpha");
    BoundReport r;
    r.theorem = Theorem::fu_baseline;
    r.inputs = {{"p_covered", p_covered}, {"alpha", alpha}};
    finish_with_value(r, p_covered * 4.0 * alpha * (1.0 - alpha) + (1.0 - p_covered));
    return r;
}

BoundReport wei_applicability(double coverage) {
    require_unit_interval(coverage, "coverage");
    BoundReport r;
    r.theorem = Theorem::wei_applicability;
    r.inputs = {{"coverage", coverage}};
    bool ok = coverage >= 2.0 / 3.0;
    r.preconditions.push_back({"coverage-threshold", coverage, ok, "requires coverage >= 2/3"});
    r.applicable = ok;
    return r;
}

BoundReport plc_bound(double c, double q, double alpha, double err_weak, double nonrobust_mass,
                      PlcGate gate, std::optional<double> gate_event_mass) {
    require_alpha(alpha);
    require_nonnegative(c, "expansion c");
    require_unit_interval(q, "q");
    require_unit_interval(err_weak, "err_weak");
    require_unit_interval(nonrobust_mass, "nonrobust_mass");

    BoundReport r;
    r.theorem = Theorem::plc_main;
    r.inputs = {{"c", c}, {"q", q},
                {"alpha", alpha}, {"err_weak", err_weak},
                {"nonrobust_mass", nonrobust_mass}};

    r.preconditions.push_back({"expansion-positive", c, c > 0.0, "requires c > 0"});

    // Gate on P(f != weak or f not robust | S_i); union-bound proxy unless
    // the exact joint mass is supplied.
    double gate_mass = gate_event_mass.value_or(std::min(1.0, err_weak + nonrobust_mass));
    if (gate_event_mass) r.inputs["gate_event_mass"] = *gate_event_mass;
    if (gate == PlcGate::headline) {
        double limit = (1.0 - alpha + 3.0 * c * alpha) / 4.0;
        r.preconditions.push_back({"classifier-gate", gate_mass, gate_mass <= limit,
                                   "err-or-nonrobust mass <= (1 - a + 3ca)/4"});
        double q_limit = 0.75 * (1.0 - 2.0 * alpha);
        r.preconditions.push_back({"q-threshold", q, q < q_limit, "requires q < 3(1-2a)/4"});
    } else {
        double limit = 1.0 - q - alpha;
        r.preconditions.push_back({"classifier-gate", gate_mass, gate_mass <= limit,
                                   "err-or-nonrobust mass <= 1 - q - a"});
    }

    double cp = c / ((1.0 - alpha) + c * alpha);
    r.inputs["c_prime"] = cp;
    double denom = 1.0 - 2.0 * cp * alpha;
    r.preconditions.push_back({"denominator-positive", denom, denom > 0.0,
                               "requires 1 - 2c'a > 0"});

    if (!all_satisfied(r)) return r;
    double raw = (err_weak - alpha * (2.0 * cp - 1.0) + 2.0 * cp * alpha * nonrobust_mass) / denom;
    finish_with_value(r, raw);
    return r;
}

BoundReport plc_simplified_bound(double c, double alpha, double err_weak, double nonrobust_mass,
                                 double delta_param) {
    require_alpha(alpha);
    require_nonnegative(c, "expansion c");
    require_unit_interval(err_weak, "err_weak");
    require_unit_interval(nonrobust_mass, "nonrobust_mass");
    if (!(delta_param > 0.0 && delta_param <= 1.0))
        throw DomainError("delta_param outside (0, 1]");

    BoundReport r;
    r.theorem = Theorem::plc_simplified;
    r.inputs = {{"c", c}, {"alpha", alpha},       {"err_weak", err_weak},
                {"nonrobust_mass", nonrobust_mass}, {"delta", delta_param}};

    r.preconditions.push_back({"expansion-positive", c, c > 0.0, "requires c > 0"});
    double feasible_limit = c * alpha * delta_param + (1.0 - alpha) * (1.0 - delta_param);
    r.preconditions.push_back({"delta-feasible", err_weak, err_weak <= feasible_limit,
                               "err_weak <= c*a*delta + (1-a)(1-delta)"});

    if (!all_satisfied(r)) return r;
    double raw = (2.0 * alpha / (1.0 - 2.0 * alpha)) * nonrobust_mass + err_weak +
                 alpha * (1.0 - 2.0 * c * delta_param);
    finish_with_value(r, raw);
    return r;
}

BoundReport coverage_bound(double c1, double c2, double q, double alpha, double err_weak,
                           double nonrobust_uncovered) {
    require_alpha(alpha);
    require_nonnegative(c1, "expansion c1");
    require_nonnegative(c2, "expansion c2");
    require_unit_interval(q, "q");
    require_unit_interval(err_weak, "err_weak");
    require_unit_interval(nonrobust_uncovered, "nonrobust_uncovered");

    BoundReport r;
    r.theorem = Theorem::coverage_main;
    r.inputs = {{"c1", c1}, {"c2", c2}, {"q", q}, {"alpha", alpha},
                {"err_weak", err_weak}, {"nonrobust_uncovered", nonrobust_uncovered}};

    r.preconditions.push_back({"expansion-positive", std::min(c1, c2),
                               c1 > 0.0 && c2 > 0.0, "requires c1, c2 > 0"});

    double gate_mass = err_weak + nonrobust_uncovered;
    double gate_limit = c1 * (1.0 - q - alpha);
    r.preconditions.push_back({"classifier-gate", gate_mass, gate_mass < gate_limit,
                               "err_weak + nonrobust < c1(1 - q - a)"});

    // Equal rates reduce to the single-rate denominator c(1-2a); evaluating
    // that form directly keeps the reduction exact in floating point.
    double ratio_denom = c1 == c2 ? c1 * (1.0 - 2.0 * alpha) : c1 - (c1 + c2) * alpha;
    r.preconditions.push_back({"ratio-denominator", ratio_denom, ratio_denom > 0.0,
                               "requires c1 - (c1+c2)a > 0"});

    // The coefficient on the robustness term needs cmin/cmax - 2a > 0, but
    // only participates when the robustness term is nonzero; with
    // nonrobust_uncovered == 0 the intermediate form of the bound holds
    // without it.
    double cmin = std::min(c1, c2), cmax = std::max(c1, c2);
    double coeff_denom = (cmax > 0.0 ? cmin / cmax : 0.0) - 2.0 * alpha;
    if (nonrobust_uncovered > 0.0)
        r.preconditions.push_back({"robust-coefficient", coeff_denom, coeff_denom > 0.0,
                                   "requires cmin/cmax - 2a > 0 when the robustness term is active"});

    if (!all_satisfied(r)) return r;

    double first = nonrobust_uncovered > 0.0
                       ? (1.0 + alpha / coeff_denom) * nonrobust_uncovered
                       : 0.0;
    double ratio = std::max(0.0, err_weak - c2 * alpha) / ratio_denom;
    finish_with_value(r, first + std::max(q, ratio));
    return r;
}

BoundReport coverage_bound_weak(double c, double q, double alpha, double err_weak,
                                double nonrobust_uncovered) {
    require_alpha(alpha);
    require_nonnegative(c, "expansion c");
    require_unit_interval(q, "q");
    require_unit_interval(err_weak, "err_weak");
    require_unit_interval(nonrobust_uncovered, "nonrobust_uncovered");

    BoundReport r;
    r.theorem = Theorem::coverage_weak;
    r.inputs = {{"c", c}, {"q", q}, {"alpha", alpha},
                {"err_weak", err_weak}, {"nonrobust_uncovered", nonrobust_uncovered}};

    r.preconditions.push_back({"expansion-positive", c, c > 0.0, "requires c > 0"});
    if (!all_satisfied(r)) return r;

    double ratio = err_weak / (c * (1.0 - alpha));
    finish_with_value(r, nonrobust_uncovered + std::max(q, ratio));
    return r;
}

BoundReport wei_plc_bound(double c, double q, double alpha, double err_weak,
                          double nonrobust_mass, std::optional<double> gate_event_mass) {
    require_alpha(alpha);
    require_nonnegative(c, "expansion c");
    require_unit_interval(q, "q");
    require_unit_interval(err_weak, "err_weak");
    require_unit_interval(nonrobust_mass, "nonrobust_mass");

    BoundReport r;
    r.theorem = Theorem::wei_plc;
    r.inputs = {{"c", c}, {"q", q}, {"alpha", alpha},
                {"err_weak", err_weak}, {"nonrobust_mass", nonrobust_mass}};

    double c_threshold = alpha / (1.0 - alpha);
    r.preconditions.push_back({"c-gate", c, c > c_threshold, "requires c > a/(1-a)"});

    double ct = c * (1.0 - alpha) / alpha;
    r.inputs["c_tilde"] = ct;
    double gate_mass = gate_event_mass.value_or(std::min(1.0, err_weak + nonrobust_mass));
    if (gate_event_mass) r.inputs["gate_event_mass"] = *gate_event_mass;
    double gate_limit = alpha * (1.0 + q * (ct - 1.0));
    r.preconditions.push_back({"classifier-gate", gate_mass, gate_mass <= gate_limit,
                               "err-or-nonrobust mass <= a(1 + q(c~ - 1))"});

    if (!all_satisfied(r)) return r;
    double raw = 2.0 * (q * alpha + nonrobust_mass) + err_weak - alpha;
    finish_with_value(r, raw);
    return r;
}

}  // namespace wsexp
