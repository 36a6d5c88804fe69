#include <cmath>
#include <fstream>

#include "doctest.h"
#include "helpers.hpp"
#include "schema_check.hpp"
#include "wsexp/audit.hpp"
#include "wsexp/reports.hpp"

using namespace wsexp;
using nlohmann::json;

namespace {

std::string fixture(const std::string& name) { return std::string(WSEXP_FIXTURE_DIR) + "/" + name; }
std::string schema(const std::string& name) { return std::string(WSEXP_SCHEMA_DIR) + "/" + name; }

void expect_valid(const json& value, const std::string& schema_name) {
    auto errors = testutil::check_against_schema_file(value, schema(schema_name));
    for (const auto& e : errors) MESSAGE(e);
    CHECK(errors.empty());
}

}  // namespace

TEST_CASE("bound report JSON matches the committed schema") {
    expect_valid(to_json(plc_bound(0.848, 0.0, 0.11, 0.12, 0.0)), "bound_report.schema.json");
    expect_valid(to_json(wei_plc_bound(0.32, 0.0, 0.33, 0.29, 0.0)), "bound_report.schema.json");
    expect_valid(to_json(wei_applicability(0.06)), "bound_report.schema.json");
}

TEST_CASE("expansion report JSON matches the committed schema") {
    Population pop = testutil::toy_population();
    ExampleGraph g = testutil::toy_graph(pop);
    SetFamily fam;
    fam.base = testutil::ids(pop, {"a", "b"});
    fam.members = {fam.base};
    ExpansionEstimate est =
        exact_expansion(g, pop, fam, testutil::ids(pop, {"c"}), fam.base, 0.0, 0.0);
    expect_valid(to_json(est), "expansion_report.schema.json");

    ExpansionEstimate none =
        exact_expansion(g, pop, fam, testutil::ids(pop, {"c"}), fam.base, 1.0, 0.0);
    expect_valid(to_json(none), "expansion_report.schema.json");

    HeuristicResult h;
    h.has_qualifying = true;
    h.c_min = 0.5;
    h.best_draw = 2;
    h.trace = {{0, true, 0.7, 0.5, 3}, {2, true, 0.5, 0.5, 2}};
    expect_valid(to_json(h), "expansion_report.schema.json");
}

TEST_CASE("verification report JSON matches the committed schema") {
    SuiteConfig cfg;
    cfg.instances = 4;
    cfg.seed = 9;
    VerificationReport rep = run_theorem_suite(Theorem::coverage_weak, cfg);
    expect_valid(to_json(rep), "verification_report.schema.json");
    CHECK(render_verification(to_json(rep)).find("coverage-weak") != std::string::npos);
}

TEST_CASE("audit report on the published-inputs fixture") {
    Population pop = load_population_file(fixture("table1_population.jsonl"));
    ExampleGraph g = ExampleGraph::build_from_ids(pop, load_edge_list_file(fixture("table1_edges.tsv")));
    std::vector<LabelAssignment> fs = {
        load_predictions_file(fixture("table1_pred.jsonl"), pop).to_total(pop)};

    json report = audit_report(pop, g, fs, AuditConfig{});
    expect_valid(report, "audit_report.schema.json");
    REQUIRE(report["classes"].size() == 2);

    const json& c0 = report["classes"][0];
    CHECK(c0["alpha"].get<double>() == doctest::Approx(0.11).epsilon(1e-9));
    CHECK(c0["err_weak_worst"].get<double>() == doctest::Approx(0.12).epsilon(1e-9));
    CHECK(c0["expansion"]["pair_bad_good"]["c"].get<double>() ==
          doctest::Approx(0.848).epsilon(2e-3));
    REQUIRE(c0["bounds"]["plc-main"]["applicable"].get<bool>());
    CHECK(std::abs(c0["bounds"]["plc-main"]["value"].get<double>() - 0.05) <= 0.01);

    const json& c1 = report["classes"][1];
    CHECK(c1["alpha"].get<double>() == doctest::Approx(0.33).epsilon(1e-9));
    CHECK(c1["err_weak_worst"].get<double>() == doctest::Approx(0.29).epsilon(1e-9));
    CHECK(c1["expansion"]["pair_bad_good"]["c"].get<double>() ==
          doctest::Approx(0.497).epsilon(2e-3));
    REQUIRE(c1["bounds"]["plc-main"]["applicable"].get<bool>());
    CHECK(std::abs(c1["bounds"]["plc-main"]["value"].get<double>() - 0.37) <= 0.005);

    CHECK(report["applicable_any"].get<bool>());
}

TEST_CASE("audit report on the toy fixture with two hand classifiers") {
    Population pop = testutil::toy_population();
    ExampleGraph g = testutil::toy_graph(pop);
    std::vector<LabelAssignment> fs = {LabelAssignment::constant(pop.size(), 0),
                                       testutil::labels_by_id(pop, {{"a", 1}})};

    json report = audit_report(pop, g, fs, AuditConfig{});
    expect_valid(report, "audit_report.schema.json");

    // Hand computation: alpha 1/3; worst weak error 2/3 (flip-a classifier
    // disagrees on a and c); worst covered true error 1/3; both uncovered
    // points get label 0 under both classifiers.
    const json& c0 = report["classes"][0];
    CHECK(c0["alpha"].get<double>() == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(c0["err_weak_worst"].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(c0["true_err_covered_worst"].get<double>() == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(c0["true_err_uncovered_worst"].get<double>() == 0.0);

    // Family members {a,b} and {b}: ratio 1 at the full set, 2 at {b}.
    CHECK(c0["expansion"]["pair_bad_good"]["c"].get<double>() ==
          doctest::Approx(1.0).epsilon(1e-9));
    // No classifier errs on the uncovered set, so the mistake family on it
    // never qualifies and the coverage bounds stay unavailable.
    CHECK(!c0["expansion"]["pair_good_uncovered"]["qualifying"].get<bool>());
    CHECK(c0["bounds"]["coverage-main"].is_null());
    CHECK(c0["bounds"]["coverage-weak"].is_null());

    // plc gate holds with equality (2/3 <= 1 - 1/3) and the bound value is 1.
    REQUIRE(c0["bounds"]["plc-main"]["applicable"].get<bool>());
    CHECK(c0["bounds"]["plc-main"]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));

    // Class 1 has no members at all.
    CHECK(!report["classes"][1]["eligible"].get<bool>());
}

TEST_CASE("audit: strict robustness refused in empirical mode") {
    Population pop = testutil::toy_population();
    ExampleGraph g = testutil::toy_graph(pop);
    std::vector<LabelAssignment> fs = {LabelAssignment::constant(pop.size(), 0)};
    AuditConfig cfg;
    cfg.strict_robustness = true;
    cfg.empirical = true;
    cfg.oracle_pairs[pop.index_of("c")] = pop.index_of("a");
    cfg.sample_pool = {pop.index_of("a"), pop.index_of("b")};
    CHECK_THROWS_AS(audit_report(pop, g, fs, cfg), InputError);
}

TEST_CASE("audit: empirical mode estimates from the oracle sample") {
    Population pop = load_population_file(fixture("table1_population.jsonl"));
    ExampleGraph g = ExampleGraph::build_from_ids(pop, load_edge_list_file(fixture("table1_edges.tsv")));
    std::vector<LabelAssignment> fs = {
        load_predictions_file(fixture("table1_pred.jsonl"), pop).to_total(pop)};

    AuditConfig cfg;
    cfg.empirical = true;
    cfg.oracle_pairs[pop.index_of("w0")] = pop.index_of("v01");
    cfg.oracle_pairs[pop.index_of("w1")] = pop.index_of("v11");
    for (const char* id : {"v01", "v02", "v03", "v11", "v12"})
        cfg.sample_pool.push_back(pop.index_of(id));

    json report = audit_report(pop, g, fs, cfg);
    expect_valid(report, "audit_report.schema.json");
    CHECK(report["mode"] == "empirical");
    const json& pair = report["classes"][0]["expansion"]["pair_bad_good"];
    REQUIRE(pair["qualifying"].get<bool>());
    CHECK(pair["mode"] == "empirical");
    // Single oracle source w0 maps into the non-mistake set; all three B
    // samples are members too: ratio (1/1) / (3/3) = 1.
    CHECK(pair["c"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("audit table renderer consumes the JSON only") {
    Population pop = load_population_file(fixture("table1_population.jsonl"));
    ExampleGraph g = ExampleGraph::build_from_ids(pop, load_edge_list_file(fixture("table1_edges.tsv")));
    std::vector<LabelAssignment> fs = {
        load_predictions_file(fixture("table1_pred.jsonl"), pop).to_total(pop)};
    json report = audit_report(pop, g, fs, AuditConfig{});

    std::string table = render_audit_tables(report);
    CHECK(table.find("Covered sets") != std::string::npos);
    CHECK(table.find("Uncovered sets") != std::string::npos);
    CHECK(table.find("0.049") != std::string::npos);

    // Rendering a doctored document reflects the document, not recomputation.
    json doctored = report;
    doctored["classes"][0]["bounds"]["plc-main"]["value"] = 0.9999;
    CHECK(render_audit_tables(doctored).find("0.9999") != std::string::npos);
}
