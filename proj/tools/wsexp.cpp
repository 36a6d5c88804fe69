// wsexp: expansion measurement and weak-to-strong error bound evaluation for
// finite weakly-labeled populations.
//
// Subcommands: audit, bounds, simulate, verify. Exit codes: 0 success,
// 1 usage/input error, 2 verification violation, 3 audit produced no
// applicable bound.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wsexp/audit.hpp"
#include "wsexp/bounds.hpp"
#include "wsexp/expansion.hpp"
#include "wsexp/graph.hpp"
#include "wsexp/population.hpp"
#include "wsexp/reports.hpp"
#include "wsexp/robustness.hpp"
#include "wsexp/testbeds.hpp"

namespace {

using nlohmann::json;
using namespace wsexp;

void emit(const json& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw InputError("cannot open output file: " + out_path);
        out << report.dump(2) << "\n";
    }
}

// --- audit ---

struct AuditOptions {
    std::string population, edges, out;
    std::vector<std::string> predictions;
    std::string oracle, sample;
    double eta = 0.0;
    double q = 0.0;
    std::optional<int> classes;
    bool strict_robustness = false;
    bool table = false;
};

int run_audit(const AuditOptions& opt) {
    Population pop = load_population_file(opt.population, opt.classes);
    ExampleGraph graph = ExampleGraph::build_from_ids(pop, load_edge_list_file(opt.edges));
    if (opt.predictions.empty()) throw InputError("audit needs at least one prediction file");

    AuditConfig cfg;
    cfg.eta = opt.eta;
    cfg.q = opt.q;
    cfg.strict_robustness = opt.strict_robustness;
    cfg.empirical = !opt.oracle.empty();
    if (cfg.empirical && opt.sample.empty())
        throw InputError("empirical mode needs --sample with ids drawn from the target sets");

    std::vector<LabelAssignment> fs;
    for (const std::string& path : opt.predictions)
        fs.push_back(load_predictions_file(path, pop).to_total(pop));

    if (cfg.empirical) {
        std::ifstream pairs(opt.oracle);
        if (!pairs) throw InputError("cannot open oracle pairs file: " + opt.oracle);
        std::string line;
        int line_no = 0;
        while (std::getline(pairs, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            auto tab = line.find('\t');
            if (tab == std::string::npos)
                throw InputError("oracle pairs line " + std::to_string(line_no) +
                                 ": expected source<TAB>target");
            PointIndex src = pop.index_of(line.substr(0, tab));
            PointIndex tgt = pop.index_of(line.substr(tab + 1));
            const auto& nb = graph.neighbors(src);
            if (!std::binary_search(nb.begin(), nb.end(), tgt))
                throw InputError("oracle pairs line " + std::to_string(line_no) +
                                 ": target is not a declared neighbor of source");
            cfg.oracle_pairs[src] = tgt;
        }
        std::ifstream sample(opt.sample);
        if (!sample) throw InputError("cannot open sample file: " + opt.sample);
        while (std::getline(sample, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            cfg.sample_pool.push_back(pop.index_of(line));
        }
    }

    json report = audit_report(pop, graph, fs, cfg);
    emit(report, opt.out);
    if (opt.table) std::cout << render_audit_tables(report);
    return report["applicable_any"].get<bool>() ? 0 : 3;
}

// --- bounds ---

struct BoundsOptions {
    std::string theorem, out;
    std::optional<double> c, c1, c2, alpha, err, nonrobust, ps, coverage;
    double q = 0.0;
    double delta = 0.75;
    std::string gate = "main";
};

double need(const std::optional<double>& v, const char* flag) {
    if (!v) throw InputError(std::string("missing required flag --") + flag);
    return *v;
}

int run_bounds(const BoundsOptions& opt) {
    auto t = theorem_from_name(opt.theorem);
    if (!t) throw InputError("unknown theorem: " + opt.theorem);
    double nonrobust = opt.nonrobust.value_or(0.0);
    BoundReport r;
    switch (*t) {
        case Theorem::fu_baseline:
            r = fu_baseline_bound(need(opt.ps, "ps"), need(opt.alpha, "alpha"));
            break;
        case Theorem::wei_applicability:
            r = wei_applicability(need(opt.coverage, "coverage"));
            break;
        case Theorem::plc_main: {
            if (opt.gate != "main" && opt.gate != "headline")
                throw InputError("--gate must be main or headline");
            PlcGate gate = opt.gate == "headline" ? PlcGate::headline : PlcGate::main;
            r = plc_bound(need(opt.c, "c"), opt.q, need(opt.alpha, "alpha"), need(opt.err, "err"),
                          nonrobust, gate);
            break;
        }
        case Theorem::plc_simplified:
            r = plc_simplified_bound(need(opt.c, "c"), need(opt.alpha, "alpha"),
                                     need(opt.err, "err"), nonrobust, opt.delta);
            break;
        case Theorem::coverage_main:
            r = coverage_bound(need(opt.c1, "c1"), need(opt.c2, "c2"), opt.q,
                               need(opt.alpha, "alpha"), need(opt.err, "err"), nonrobust);
            break;
        case Theorem::coverage_weak:
            r = coverage_bound_weak(need(opt.c, "c"), opt.q, need(opt.alpha, "alpha"),
                                    need(opt.err, "err"), nonrobust);
            break;
        case Theorem::wei_plc:
            r = wei_plc_bound(need(opt.c, "c"), opt.q, need(opt.alpha, "alpha"),
                              need(opt.err, "err"), nonrobust);
            break;
    }
    emit(to_json(r), opt.out);
    return 0;
}

// --- simulate ---

struct SimulateOptions {
    std::string testbed = "cotraining";
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int classes = 2;
    int points = 60;
    std::vector<double> alpha;
    double coverage = 0.7;
    double density = 0.3;
    bool cross_class = false;
    bool random_masses = false;
};

json expansion_summary_cotraining(const GeneratedInstance& inst) {
    const Population& pop = inst.population;
    ExampleGraph g = ExampleGraph::build_from_ids(pop, inst.edges);
    Partition part = make_partition(pop);

    HypothesisClassSpec spec;
    spec.kind = HypothesisClassSpec::Kind::view2_measurable;
    spec.group_of_point = inst.view2_of_point;
    int groups = 0;
    for (int v : inst.view2_of_point) groups = std::max(groups, v + 1);
    spec.num_groups = groups;
    std::vector<LabelAssignment> fs = enumerate_hypotheses(spec, pop);

    json out = json::array();
    bool all_one = true;
    for (int c = 0; c < pop.num_classes(); ++c) {
        const ClassPartition& cp = part.per_class[c];
        json row;
        row["class"] = c;
        struct PairSpec {
            const char* name;
            const PointSet* a;
            const PointSet* b;
            FamilyKind kind;
        } pairs[] = {
            {"pair_good_uncovered", &cp.covered_good, &cp.uncovered, FamilyKind::mistakes},
            {"pair_bad_uncovered", &cp.covered_bad, &cp.uncovered, FamilyKind::non_mistakes},
            {"pair_good_bad", &cp.covered_good, &cp.covered_bad, FamilyKind::mistakes},
            {"pair_bad_good", &cp.covered_bad, &cp.covered_good, FamilyKind::non_mistakes},
        };
        for (const PairSpec& p : pairs) {
            if (pop.mass_of(*p.a) <= 0.0 || pop.mass_of(*p.b) <= 0.0) {
                row[p.name] = json(nullptr);
                all_one = false;
                continue;
            }
            SetFamily fam = mistake_family(pop, g, *p.b, fs, 0.0, p.kind);
            ExpansionEstimate est = exact_expansion(g, pop, fam, *p.a, *p.b, 0.0, 0.0);
            row[p.name] = to_json(est);
            all_one = all_one && est.has_qualifying && std::abs(est.c - 1.0) <= 1e-9;
        }
        out.push_back(row);
    }
    return json{{"per_class", out}, {"all_pairs_expand_to_one", all_one}};
}

int run_simulate(const SimulateOptions& opt) {
    std::filesystem::create_directories(opt.out_dir);
    GeneratedInstance inst;
    json summary;
    summary["testbed"] = opt.testbed;
    summary["seed"] = opt.seed;

    if (opt.testbed == "cotraining") {
        SplitRng rng(opt.seed);
        CoTrainingSpec spec = random_cotraining_spec(rng, opt.classes);
        inst = cotraining_population(spec);
        summary["expansion"] = expansion_summary_cotraining(inst);
    } else if (opt.testbed == "planted") {
        PlantedParams params;
        params.n_points = opt.points;
        params.num_classes = opt.classes;
        params.alpha_targets = opt.alpha.empty()
                                   ? std::vector<double>(opt.classes, 0.2)
                                   : opt.alpha;
        if (static_cast<int>(params.alpha_targets.size()) == 1 && opt.classes > 1)
            params.alpha_targets.assign(opt.classes, params.alpha_targets[0]);
        params.coverage_target = opt.coverage;
        params.edge_density = opt.density;
        params.cross_class_edges = opt.cross_class;
        params.uniform_masses = !opt.random_masses;
        inst = planted_population(params, opt.seed);
    } else {
        throw InputError("unknown testbed: " + opt.testbed);
    }

    json alphas = json::array();
    for (const auto& a : inst.realized_alpha) alphas.push_back(a ? json(*a) : json(nullptr));
    summary["realized_alpha"] = alphas;
    summary["realized_coverage"] = inst.realized_coverage;
    summary["points"] = inst.population.size();
    summary["edges"] = inst.edges.size();

    std::ofstream popf(opt.out_dir + "/population.jsonl");
    write_population(popf, inst.population);
    std::ofstream edgef(opt.out_dir + "/edges.tsv");
    ExampleGraph g = ExampleGraph::build_from_ids(inst.population, inst.edges);
    write_edge_list(edgef, inst.population, g);
    std::ofstream sumf(opt.out_dir + "/summary.json");
    sumf << summary.dump(2) << "\n";
    std::cout << summary.dump(2) << "\n";
    return 0;
}

// --- verify ---

struct VerifyOptions {
    std::vector<std::string> theorems;
    std::size_t instances = 200;
    std::uint64_t seed = 0;
    bool mutate = false;
    int min_points = 8;
    int max_points = 12;
    std::string out;
    // Scalar mode: evaluate a single bound instead of the randomized suite.
    std::optional<double> c, c1, c2, alpha, err, nonrobust;
    double q = 0.0;
};

int run_verify(const VerifyOptions& opt) {
    std::vector<std::string> names = opt.theorems;
    if (names.empty())
        names = {"plc-main", "coverage-main", "coverage-weak", "wei-plc"};

    // Scalar mode: apply the named evaluator to explicit inputs and report.
    if (opt.c || opt.alpha || opt.c1) {
        if (names.size() != 1)
            throw InputError("scalar verification takes exactly one --theorem");
        BoundsOptions b;
        b.theorem = names[0];
        b.c = opt.c;
        b.c1 = opt.c1;
        b.c2 = opt.c2;
        b.alpha = opt.alpha;
        b.err = opt.err;
        b.nonrobust = opt.nonrobust;
        b.q = opt.q;
        b.out = opt.out;
        return run_bounds(b);
    }

    json all = json::array();
    bool violated = false;
    for (const std::string& name : names) {
        auto t = theorem_from_name(name);
        if (!t) throw InputError("unknown theorem: " + name);
        SuiteConfig cfg;
        cfg.instances = opt.instances;
        cfg.seed = opt.seed;
        cfg.mutation = opt.mutate ? 0.05 : 0.0;
        cfg.min_points = opt.min_points;
        cfg.max_points = opt.max_points;
        VerificationReport rep = run_theorem_suite(*t, cfg);
        json j = to_json(rep);
        std::cout << render_verification(j);
        all.push_back(std::move(j));
        violated = violated || rep.violations_total > 0;
    }
    if (!opt.out.empty()) emit(all, opt.out);
    return violated ? 2 : 0;
}

// Applies --config JSON (keys mirror long flag names) by injecting tokens
// ahead of the user's flags; explicit flags win.
std::vector<std::string> apply_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_path;
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--config") config_path = args[i + 1];
    if (config_path.empty()) return args;

    std::ifstream in(config_path);
    if (!in) throw InputError("cannot open config file: " + config_path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::exception& e) {
        throw InputError("config file: " + std::string(e.what()));
    }
    if (!cfg.is_object()) throw InputError("config file must hold a JSON object");

    std::vector<std::string> merged;
    if (!args.empty()) merged.push_back(args[0]);  // subcommand
    for (const auto& [key, value] : cfg.items()) {
        std::string flag = "--" + key;
        if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
        auto push_scalar = [&](const json& v) {
            merged.push_back(flag);
            merged.push_back(v.is_string() ? v.get<std::string>() : v.dump());
        };
        if (value.is_boolean()) {
            if (value.get<bool>()) merged.push_back(flag);
        } else if (value.is_array()) {
            for (const auto& v : value) push_scalar(v);
        } else {
            push_scalar(value);
        }
    }
    for (std::size_t i = 1; i < args.size(); ++i) merged.push_back(args[i]);
    return merged;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"expansion measurement and error bounds for weakly-labeled populations"};
    app.require_subcommand(1);

    AuditOptions audit;
    CLI::App* audit_cmd = app.add_subcommand(
        "audit", "measure per-class expansion and evaluate bounds on real inputs");
    audit_cmd->add_option("--population", audit.population, "population JSONL file")->required();
    audit_cmd->add_option("--edges", audit.edges, "edge list TSV file")->required();
    audit_cmd->add_option("--pred", audit.predictions, "prediction JSONL file (repeatable)")
        ->required();
    audit_cmd->add_option("--oracle", audit.oracle, "oracle pairs TSV (enables empirical mode)");
    audit_cmd->add_option("--sample", audit.sample, "sample id file for empirical denominators");
    audit_cmd->add_option("--eta", audit.eta, "robustness budget eta");
    audit_cmd->add_option("--q", audit.q, "expansion threshold q");
    int audit_classes = -1;
    audit_cmd->add_option("--classes", audit_classes, "override inferred class count");
    audit_cmd->add_flag("--strict-robustness", audit.strict_robustness,
                        "require measured eta-robust masses in gates and values");
    audit_cmd->add_flag("--table", audit.table, "print tables after the JSON report");
    audit_cmd->add_option("--out", audit.out, "write report JSON here instead of stdout");

    BoundsOptions bounds;
    CLI::App* bounds_cmd =
        app.add_subcommand("bounds", "evaluate a bound on explicit scalar inputs");
    bounds_cmd->add_option("--theorem", bounds.theorem, "which bound")->required();
    bounds_cmd->add_option("--c", bounds.c, "expansion value c");
    bounds_cmd->add_option("--c1", bounds.c1, "good-side expansion");
    bounds_cmd->add_option("--c2", bounds.c2, "bad-side expansion");
    bounds_cmd->add_option("--alpha", bounds.alpha, "pseudolabel error rate");
    bounds_cmd->add_option("--err", bounds.err, "weak-label error of the classifier");
    bounds_cmd->add_option("--nonrobust", bounds.nonrobust, "non-eta-robust mass");
    bounds_cmd->add_option("--q", bounds.q, "expansion threshold q");
    bounds_cmd->add_option("--delta", bounds.delta, "delta parameter (plc-simplified)");
    bounds_cmd->add_option("--gate", bounds.gate, "plc gate: main or headline");
    bounds_cmd->add_option("--ps", bounds.ps, "coverage P(S) (fu-baseline)");
    bounds_cmd->add_option("--coverage", bounds.coverage, "coverage (wei-applicability)");
    bounds_cmd->add_option("--out", bounds.out, "write report JSON here instead of stdout");

    SimulateOptions simulate;
    CLI::App* simulate_cmd =
        app.add_subcommand("simulate", "generate a synthetic population with known expansion");
    simulate_cmd->add_option("--testbed", simulate.testbed, "cotraining or planted");
    simulate_cmd->add_option("--seed", simulate.seed, "generator seed")->required();
    simulate_cmd->add_option("--out-dir", simulate.out_dir, "output directory");
    simulate_cmd->add_option("--classes", simulate.classes, "number of classes");
    simulate_cmd->add_option("--points", simulate.points, "population size (planted)");
    simulate_cmd->add_option("--alpha", simulate.alpha, "alpha target(s) (planted)");
    simulate_cmd->add_option("--coverage", simulate.coverage, "coverage target (planted)");
    simulate_cmd->add_option("--density", simulate.density, "edge density (planted)");
    simulate_cmd->add_flag("--cross-class", simulate.cross_class, "allow cross-class edges");
    simulate_cmd->add_flag("--random-masses", simulate.random_masses, "non-uniform point masses");

    VerifyOptions verify;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "run the randomized theorem soundness suite");
    verify_cmd->add_option("--theorem", verify.theorems, "theorem name (repeatable)");
    verify_cmd->add_option("--instances", verify.instances, "instances per theorem");
    verify_cmd->add_option("--seed", verify.seed, "suite seed")->required();
    verify_cmd->add_flag("--mutate-bounds", verify.mutate,
                         "harness self-test: corrupt bounds and expect violations");
    verify_cmd->add_option("--min-points", verify.min_points, "smallest instance size");
    verify_cmd->add_option("--max-points", verify.max_points, "largest all-dichotomy instance size");
    verify_cmd->add_option("--out", verify.out, "write reports JSON here");
    verify_cmd->add_option("--c", verify.c, "scalar mode: expansion value");
    verify_cmd->add_option("--c1", verify.c1, "scalar mode: good-side expansion");
    verify_cmd->add_option("--c2", verify.c2, "scalar mode: bad-side expansion");
    verify_cmd->add_option("--alpha", verify.alpha, "scalar mode: alpha");
    verify_cmd->add_option("--err", verify.err, "scalar mode: weak error");
    verify_cmd->add_option("--nonrobust", verify.nonrobust, "scalar mode: non-robust mass");
    verify_cmd->add_option("--q", verify.q, "scalar mode: q");

    std::string config_path;
    app.add_option("--config", config_path, "JSON config mirroring flags (flags win)");
    for (CLI::App* sub : {audit_cmd, bounds_cmd, simulate_cmd, verify_cmd})
        sub->add_option("--config", config_path, "JSON config mirroring flags (flags win)");

    try {
        std::vector<std::string> args = apply_config(argc, argv);
        std::vector<const char*> cargs = {argv[0]};
        for (const std::string& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());

        if (audit_cmd->parsed()) {
            if (audit_classes > 0) audit.classes = audit_classes;
            return run_audit(audit);
        }
        if (bounds_cmd->parsed()) return run_bounds(bounds);
        if (simulate_cmd->parsed()) return run_simulate(simulate);
        if (verify_cmd->parsed()) return run_verify(verify);
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
