#include "wsexp/reports.hpp"

#include <iomanip>
#include <sstream>

namespace wsexp {

using nlohmann::json;

std::string family_kind_name(FamilyKind kind) {
    return kind == FamilyKind::mistakes ? "mistakes" : "non-mistakes";
}

std::string expansion_mode_name(ExpansionMode mode) {
    switch (mode) {
        case ExpansionMode::exact: return "exact";
        case ExpansionMode::robust_bracket: return "robust-bracket";
        case ExpansionMode::empirical: return "empirical";
    }
    return "unknown";
}

json to_json(const Precondition& p) {
    return json{{"name", p.name}, {"value", p.value}, {"satisfied", p.satisfied},
                {"detail", p.detail}};
}

json to_json(const BoundReport& r) {
    json j;
    j["theorem"] = theorem_name(r.theorem);
    j["inputs"] = r.inputs;
    j["preconditions"] = json::array();
    for (const Precondition& p : r.preconditions) j["preconditions"].push_back(to_json(p));
    j["applicable"] = r.applicable;
    j["value"] = r.value ? json(*r.value) : json(nullptr);
    j["raw_value"] = r.raw_value ? json(*r.raw_value) : json(nullptr);
    j["clamped_low"] = r.clamped_low;
    j["clamped_high"] = r.clamped_high;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

json to_json(const ExpansionEstimate& e) {
    json j;
    j["qualifying"] = e.has_qualifying;
    j["c"] = e.has_qualifying ? json(e.c) : json(nullptr);
    j["lo"] = e.has_qualifying ? json(e.lo) : json(nullptr);
    j["hi"] = e.has_qualifying ? json(e.hi) : json(nullptr);
    j["q"] = e.q;
    j["eta"] = e.eta;
    j["mode"] = expansion_mode_name(e.mode);
    j["witness_size"] = e.witness.size();
    j["trace"] = json::array();
    return j;
}

json to_json(const HeuristicResult& h) {
    json j;
    j["qualifying"] = h.has_qualifying;
    j["c"] = h.has_qualifying ? json(h.c_min) : json(nullptr);
    j["lo"] = j["c"];
    j["hi"] = j["c"];
    j["mode"] = "empirical";
    j["witness_size"] = h.witness.size();
    j["best_draw"] = h.best_draw;
    j["stochastic_learner_caveat"] = h.stochastic_learner_caveat;
    j["trace"] = json::array();
    for (const HeuristicDraw& d : h.trace)
        j["trace"].push_back(json{{"draw", d.draw},
                                  {"qualifying", d.qualifying},
                                  {"c_hat", d.c_hat},
                                  {"denom_frac", d.denom_frac},
                                  {"witness_size", d.witness_size}});
    return j;
}

json to_json(const VerificationReport& r) {
    json j;
    j["theorem"] = theorem_name(r.theorem);
    j["instances"] = r.instances;
    j["classes_evaluated"] = r.classes_evaluated;
    j["applicable"] = r.applicable;
    j["vacuous"] = r.vacuous;
    j["violations_total"] = r.violations_total;
    j["violations"] = json::array();
    for (const Violation& v : r.violations)
        j["violations"].push_back(json{{"class", v.class_index},
                                       {"hypothesis", v.hypothesis},
                                       {"bound", v.bound},
                                       {"true_error", v.true_error},
                                       {"c1", v.c1},
                                       {"c2", v.c2},
                                       {"alpha", v.alpha},
                                       {"err_weak", v.err_weak}});
    j["max_slack"] = r.max_slack;
    j["min_slack"] = r.min_slack;
    return j;
}

namespace {

std::string fmt(const json& v, int prec = 4) {
    if (v.is_null()) return "n/a";
    if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) {
        std::ostringstream os;
        os << std::fixed << std::setprecision(prec) << v.get<double>();
        return os.str();
    }
    return v.dump();
}

std::string bound_cell(const json& b) {
    if (b.is_null()) return "n/a";
    if (!b.value("applicable", false)) return "n/a";
    std::string s = fmt(b["value"]);
    if (b.value("clamped_low", false) || b.value("clamped_high", false)) s += "*";
    return s;
}

std::string expansion_cell(const json& e) {
    if (e.is_null()) return "n/a";
    if (!e.value("qualifying", false)) return "no-qual";
    if (e["mode"] == "robust-bracket")
        return "[" + fmt(e["lo"], 3) + "," + fmt(e["hi"], 3) + "]";
    return fmt(e["c"], 3);
}

void print_row(std::ostringstream& os, const std::vector<std::string>& cells,
               const std::vector<int>& widths) {
    for (std::size_t i = 0; i < cells.size(); ++i)
        os << std::left << std::setw(widths[i]) << cells[i] << (i + 1 < cells.size() ? " " : "");
    os << "\n";
}

}  // namespace

std::string render_audit_tables(const json& audit) {
    std::ostringstream os;
    os << "coverage P(S) = " << fmt(audit["coverage"]) << ", eta = " << fmt(audit["eta"], 3)
       << ", q = " << fmt(audit["q"], 3) << ", prediction files = "
       << audit["num_prediction_files"].get<int>() << "\n";
    for (const auto& d : audit.value("diagnostics", json::array()))
        os << "note: " << d.get<std::string>() << "\n";

    os << "\nCovered sets\n";
    std::vector<int> w1 = {5, 16, 8, 10, 10, 12};
    print_row(os, {"class", "(bad,good) exp.", "alpha", "err_weak", "plc bound", "true err (S_i)"}, w1);
    for (const auto& row : audit["classes"]) {
        print_row(os,
                  {fmt(row["class"]), expansion_cell(row["expansion"]["pair_bad_good"]),
                   fmt(row["alpha"], 3), fmt(row["err_weak_worst"]),
                   bound_cell(row["bounds"]["plc-main"]), fmt(row["true_err_covered_worst"])},
                  w1);
    }

    os << "\nUncovered sets\n";
    std::vector<int> w2 = {5, 18, 18, 10, 12, 12, 12};
    print_row(os,
              {"class", "(good,uncov) exp.", "(bad,uncov) exp.", "err_weak", "cov bound",
               "cov-weak bd", "true err (T_i)"},
              w2);
    for (const auto& row : audit["classes"]) {
        print_row(os,
                  {fmt(row["class"]), expansion_cell(row["expansion"]["pair_good_uncovered"]),
                   expansion_cell(row["expansion"]["pair_bad_uncovered"]), fmt(row["err_weak_worst"]),
                   bound_cell(row["bounds"]["coverage-main"]),
                   bound_cell(row["bounds"]["coverage-weak"]),
                   fmt(row["true_err_uncovered_worst"])},
                  w2);
    }
    return os.str();
}

std::string render_verification(const json& v) {
    std::ostringstream os;
    os << "theorem " << v["theorem"].get<std::string>() << ": instances "
       << v["instances"].get<std::size_t>() << ", applicable " << v["applicable"].get<std::size_t>()
       << ", vacuous " << v["vacuous"].get<std::size_t>() << ", violations "
       << v["violations_total"].get<std::size_t>();
    if (v["applicable"].get<std::size_t>() > 0)
        os << ", slack [" << fmt(v["min_slack"]) << ", " << fmt(v["max_slack"]) << "]";
    os << "\n";
    for (const auto& viol : v["violations"]) {
        os << "  VIOLATION class " << viol["class"] << " hypothesis " << viol["hypothesis"]
           << ": bound " << fmt(viol["bound"]) << " < true error " << fmt(viol["true_error"])
           << "\n";
    }
    return os.str();
}

}  // namespace wsexp
