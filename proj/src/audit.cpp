#include "wsexp/audit.hpp"

#include <algorithm>
#include <optional>

#include "wsexp/bounds.hpp"
#include "wsexp/reports.hpp"
#include "wsexp/robustness.hpp"

namespace wsexp {

using nlohmann::json;

namespace {

json estimate_pair_exact(const Population& pop, const ExampleGraph& g,
                         const std::vector<LabelAssignment>& fs, const PointSet& a,
                         const PointSet& b, FamilyKind kind, double q, double eta,
                         std::optional<ExpansionEstimate>* keep) {
    if (pop.mass_of(a) <= 0.0 || pop.mass_of(b) <= 0.0) return json(nullptr);
    SetFamily fam = mistake_family(pop, g, b, fs, eta, kind);
    ExpansionEstimate est = exact_expansion(g, pop, fam, a, b, q, eta);
    if (keep) *keep = est;
    return to_json(est);
}

json estimate_pair_empirical(const Population& pop, const std::vector<LabelAssignment>& fs,
                             const AuditConfig& cfg, const PointSet& a, const PointSet& b,
                             FamilyKind kind, std::optional<ExpansionEstimate>* keep) {
    if (pop.mass_of(a) <= 0.0 || pop.mass_of(b) <= 0.0) return json(nullptr);
    OracleSample sample;
    for (const auto& [src, tgt] : cfg.oracle_pairs)
        if (a.contains(src)) {
            sample.sample_a.push_back(src);
            sample.oracle_of_a.push_back(tgt);
        }
    for (PointIndex x : cfg.sample_pool)
        if (b.contains(x)) sample.sample_b.push_back(x);
    if (sample.sample_a.empty() || sample.sample_b.empty()) return json(nullptr);
    double epsilon = default_epsilon(sample.sample_b.size());

    ExpansionEstimate est;
    est.mode = ExpansionMode::empirical;
    est.q = cfg.q;
    for (const LabelAssignment& f : fs) {
        // Plain outcome sets: the robustness intersection is not derivable
        // in sample-based mode.
        std::vector<PointIndex> items;
        for (PointIndex x : b) {
            bool mistake = f(x) != pop.point(x).gold;
            if ((kind == FamilyKind::mistakes) == mistake) items.push_back(x);
        }
        PointSet u = PointSet::of(std::move(items));
        EmpiricalRatio ratio = empirical_expansion(sample, u, cfg.q, epsilon);
        if (ratio.below_threshold) continue;
        if (!est.has_qualifying || ratio.value < est.c) {
            est.has_qualifying = true;
            est.c = est.lo = est.hi = ratio.value;
            est.witness = std::move(u);
        }
    }
    if (keep) *keep = est;
    return to_json(est);
}

}  // namespace

json audit_report(const Population& pop, const ExampleGraph& g,
                  const std::vector<LabelAssignment>& predictions, const AuditConfig& cfg) {
    if (predictions.empty()) throw InputError("audit needs at least one prediction");
    if (cfg.strict_robustness && cfg.empirical)
        throw InputError(
            "strict robustness refused: eta-robust masses are not derivable in empirical "
            "(oracle-based) mode");
    for (const LabelAssignment& f : predictions)
        if (f.size() != pop.size()) throw InputError("prediction does not cover the population");

    Partition part = make_partition(pop);
    std::vector<std::string> diagnostics;
    std::vector<int> eligible = eligible_classes(pop, part, &diagnostics);
    if (eligible.empty()) throw InputError("no class with valid alpha; nothing to audit");

    LabelAssignment gold = LabelAssignment::gold_of(pop);
    json report;
    report["kind"] = "audit";
    report["coverage"] = pop.mass_of(part.covered);
    report["eta"] = cfg.eta;
    report["q"] = cfg.q;
    report["mode"] = cfg.empirical ? "empirical" : "exact";
    report["strict_robustness"] = cfg.strict_robustness;
    report["num_prediction_files"] = static_cast<int>(predictions.size());
    report["diagnostics"] = diagnostics;
    report["classes"] = json::array();

    bool any_applicable = false;
    for (int c = 0; c < pop.num_classes(); ++c) {
        const ClassPartition& cp = part.per_class[c];
        json row;
        row["class"] = c;
        row["alpha"] = cp.alpha ? json(*cp.alpha) : json(nullptr);
        row["mass_covered"] = pop.mass_of(cp.covered);
        row["mass_uncovered"] = pop.mass_of(cp.uncovered);

        bool ok = std::find(eligible.begin(), eligible.end(), c) != eligible.end();
        row["eligible"] = ok;
        if (!ok) {
            report["classes"].push_back(row);
            continue;
        }

        double err_worst = 0.0, true_s_worst = 0.0, true_t_worst = 0.0;
        double nonrobust_s_worst = 0.0, nonrobust_t_worst = 0.0, joint_worst = 0.0;
        const double s_mass = pop.mass_of(cp.covered);
        const double t_mass = pop.mass_of(cp.uncovered);
        for (const LabelAssignment& f : predictions) {
            err_worst = std::max(err_worst, disagreement_with_weak(pop, f, cp.covered));
            true_s_worst = std::max(true_s_worst, disagreement(pop, f, gold, cp.covered));
            if (t_mass > 0.0)
                true_t_worst = std::max(true_t_worst, disagreement(pop, f, gold, cp.uncovered));
            if (cfg.strict_robustness) {
                PointSet robust = robust_set(g, pop, f, cfg.eta);
                nonrobust_s_worst =
                    std::max(nonrobust_s_worst,
                             pop.mass_of(cp.covered.set_difference(robust)) / s_mass);
                if (t_mass > 0.0)
                    nonrobust_t_worst =
                        std::max(nonrobust_t_worst,
                                 pop.mass_of(cp.uncovered.set_difference(robust)) / t_mass);
                double joint = 0.0;
                for (PointIndex x : cp.covered) {
                    const Point& p = pop.point(x);
                    if (f(x) != *p.weak || !robust.contains(x)) joint += p.mass;
                }
                joint_worst = std::max(joint_worst, joint / s_mass);
            }
        }
        row["err_weak_worst"] = err_worst;
        row["true_err_covered_worst"] = true_s_worst;
        row["true_err_uncovered_worst"] = t_mass > 0.0 ? json(true_t_worst) : json(nullptr);

        std::optional<ExpansionEstimate> plc_est, c1_est, c2_est;
        json expansion;
        if (cfg.empirical) {
            expansion["pair_bad_good"] = estimate_pair_empirical(
                pop, predictions, cfg, cp.covered_bad, cp.covered_good,
                FamilyKind::non_mistakes, &plc_est);
            expansion["pair_good_uncovered"] = estimate_pair_empirical(
                pop, predictions, cfg, cp.covered_good, cp.uncovered, FamilyKind::mistakes,
                &c1_est);
            expansion["pair_bad_uncovered"] = estimate_pair_empirical(
                pop, predictions, cfg, cp.covered_bad, cp.uncovered, FamilyKind::non_mistakes,
                &c2_est);
        } else {
            expansion["pair_bad_good"] =
                estimate_pair_exact(pop, g, predictions, cp.covered_bad, cp.covered_good,
                                    FamilyKind::non_mistakes, cfg.q, cfg.eta, &plc_est);
            expansion["pair_good_uncovered"] =
                estimate_pair_exact(pop, g, predictions, cp.covered_good, cp.uncovered,
                                    FamilyKind::mistakes, cfg.q, cfg.eta, &c1_est);
            expansion["pair_bad_uncovered"] =
                estimate_pair_exact(pop, g, predictions, cp.covered_bad, cp.uncovered,
                                    FamilyKind::non_mistakes, cfg.q, cfg.eta, &c2_est);
        }
        row["expansion"] = expansion;

        const double alpha = *cp.alpha;
        std::optional<double> joint_gate;
        if (cfg.strict_robustness) joint_gate = joint_worst;
        json bounds;
        if (plc_est && plc_est->has_qualifying) {
            BoundReport plc = plc_bound(plc_est->c, cfg.q, alpha, err_worst, nonrobust_s_worst,
                                        PlcGate::main, joint_gate);
            bounds["plc-main"] = to_json(plc);
            bounds["plc-simplified"] =
                to_json(plc_simplified_bound(plc_est->c, alpha, err_worst, nonrobust_s_worst));
            any_applicable = any_applicable || plc.applicable;
        } else {
            bounds["plc-main"] = json(nullptr);
            bounds["plc-simplified"] = json(nullptr);
        }
        if (c1_est && c1_est->has_qualifying && c2_est && c2_est->has_qualifying) {
            BoundReport cov = coverage_bound(c1_est->c, c2_est->c, cfg.q, alpha, err_worst,
                                             nonrobust_t_worst);
            bounds["coverage-main"] = to_json(cov);
            any_applicable = any_applicable || cov.applicable;
        } else {
            bounds["coverage-main"] = json(nullptr);
        }
        if (c1_est && c1_est->has_qualifying) {
            BoundReport weak =
                coverage_bound_weak(c1_est->c, cfg.q, alpha, err_worst, nonrobust_t_worst);
            bounds["coverage-weak"] = to_json(weak);
            any_applicable = any_applicable || weak.applicable;
        } else {
            bounds["coverage-weak"] = json(nullptr);
        }
        row["bounds"] = bounds;
        report["classes"].push_back(row);
    }

    report["applicable_any"] = any_applicable;
    return report;
}

}  // namespace wsexp
