// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. An optional argv selects a single criterion by number.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"
#include "wsexp/audit.hpp"
#include "wsexp/bounds.hpp"
#include "wsexp/expansion.hpp"
#include "wsexp/graph.hpp"
#include "wsexp/population.hpp"
#include "wsexp/robustness.hpp"
#include "wsexp/testbeds.hpp"

using namespace wsexp;

namespace {

struct Checker {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << "    failed: " << what << "\n";
        }
    }
};

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// 1. Pseudolabel-correction bound on the published inputs.
void criterion1(Checker& c) {
    BoundReport r0 = plc_bound(0.848, 0.0, 0.11, 0.12, 0.0);
    c.require(r0.applicable, "plc bound applicable at c=0.848");
    c.require(close(*r0.value, 0.05, 0.001), "plc(0.848, 0.11, 0.12) = 0.05 +- 0.001");

    BoundReport r1 = plc_bound(0.497, 0.0, 0.33, 0.29, 0.0);
    c.require(r1.applicable, "plc bound applicable at c=0.497");
    c.require(close(*r1.value, 0.37, 0.005), "plc(0.497, 0.33, 0.29) = 0.37 +- 0.005");
}

// 2. Coverage bound on the published inputs.
void criterion2(Checker& c) {
    BoundReport r1 = coverage_bound(0.75, 0.55, 0.0, 0.33, 0.29, 0.0);
    c.require(r1.applicable, "coverage bound applicable on the balanced row");
    c.require(close(*r1.value, 0.33, 0.01), "coverage(0.75, 0.55, 0.33, 0.29) = 0.33 +- 0.01");

    BoundReport r0 = coverage_bound(0.16, 0.98, 0.0, 0.11, 0.12, 0.0);
    c.require(r0.applicable, "coverage bound applicable on the skewed row");
    c.require(close(*r0.value, 0.37, 0.03),
              "coverage(0.16, 0.98, 0.11, 0.12) = 0.37 +- 0.03 (rounded published inputs)");
}

// 3. Bad-to-good-expansion bound applicability.
void criterion3(Checker& c) {
    BoundReport high = wei_plc_bound(0.32, 0.0, 0.33, 0.29, 0.0);
    c.require(!high.applicable, "not applicable at alpha=0.33, c=0.32");
    c.require(high.find("c-gate") && !high.find("c-gate")->satisfied,
              "c-gate fails at alpha=0.33, c=0.32");

    BoundReport low = wei_plc_bound(0.17, 0.0, 0.11, 0.12, 0.0);
    c.require(low.find("c-gate") && low.find("c-gate")->satisfied,
              "c-gate passes at alpha=0.11, c=0.17");
}

// 4. Co-training exactness over randomized specs.
void criterion4(Checker& c) {
    int specs_checked = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        SplitRng rng(seed);
        GeneratedInstance inst = cotraining_population(random_cotraining_spec(rng));
        const Population& pop = inst.population;
        ExampleGraph g = ExampleGraph::build_from_ids(pop, inst.edges);
        Partition part = make_partition(pop);

        HypothesisClassSpec spec;
        spec.kind = HypothesisClassSpec::Kind::view2_measurable;
        spec.group_of_point = inst.view2_of_point;
        for (int v : inst.view2_of_point) spec.num_groups = std::max(spec.num_groups, v + 1);
        std::vector<LabelAssignment> fs = enumerate_hypotheses(spec, pop);

        for (int cls = 0; cls < pop.num_classes(); ++cls) {
            const ClassPartition& cp = part.per_class[cls];
            struct Pair {
                const PointSet* a;
                const PointSet* b;
                FamilyKind kind;
            } pairs[] = {{&cp.covered_good, &cp.uncovered, FamilyKind::mistakes},
                         {&cp.covered_bad, &cp.uncovered, FamilyKind::non_mistakes},
                         {&cp.covered_good, &cp.covered_bad, FamilyKind::mistakes},
                         {&cp.covered_bad, &cp.covered_good, FamilyKind::non_mistakes}};
            for (const Pair& p : pairs) {
                SetFamily fam = mistake_family(pop, g, *p.b, fs, 0.0, p.kind);
                ExpansionEstimate est = exact_expansion(g, pop, fam, *p.a, *p.b, 0.0, 0.0);
                c.require(est.has_qualifying, "co-training pair has a qualifying member");
                if (est.has_qualifying)
                    c.require(close(est.c, 1.0, 1e-9), "co-training expansion = 1 +- 1e-9");
            }

            // Bit-for-bit closed form at c = 1 for every gated hypothesis.
            double alpha = *cp.alpha;
            for (const LabelAssignment& f : fs) {
                double err = disagreement_with_weak(pop, f, cp.covered);
                BoundReport plc = plc_bound(1.0, 0.0, alpha, err, 0.0);
                if (!plc.applicable) continue;
                double closed_form = (err - alpha) / (1.0 - 2.0 * alpha);
                c.require(*plc.raw_value == closed_form,
                          "plc(c=1, q=0) equals the two-view closed form bit for bit");
            }
        }

        // Every view-2-measurable hypothesis is perfectly robust everywhere.
        for (const LabelAssignment& f : fs) {
            RobustnessProfile prof = robustness_profile(g, pop, f);
            for (PointIndex i = 0; i < pop.size(); ++i)
                if (prof.r[i] && *prof.r[i] != 0.0)
                    c.require(false, "view-2-measurable classifier with nonzero robustness");
        }
        ++specs_checked;
    }
    c.require(specs_checked >= 50, "checked at least 50 co-training specs");

    // Symmetric 2x2 views: population ERM attains weak error alpha per class.
    CoTrainingSpec two;
    two.num_classes = 2;
    two.class_priors = {0.5, 0.5};
    two.view1_given_class = {{0.8, 0.2}, {0.2, 0.8}};
    two.view2_given_class = {{1.0, 0.0}, {0.0, 1.0}};
    two.teacher = {0, 1};
    GeneratedInstance inst = cotraining_population(two);
    Partition part = make_partition(inst.population);
    HypothesisClassSpec spec;
    spec.kind = HypothesisClassSpec::Kind::view2_measurable;
    spec.group_of_point = inst.view2_of_point;
    spec.num_groups = 2;
    std::vector<LabelAssignment> fs = enumerate_hypotheses(spec, inst.population);
    std::vector<std::pair<PointIndex, int>> sample;
    for (PointIndex x : part.covered) sample.emplace_back(x, *inst.population.point(x).weak);
    ErmResult erm = erm_train(inst.population, sample, fs);
    for (int cls = 0; cls < 2; ++cls) {
        double err = disagreement_with_weak(inst.population, fs[erm.index],
                                            part.per_class[cls].covered);
        c.require(close(err, *part.per_class[cls].alpha, 1e-12),
                  "2x2 ERM weak error equals alpha");
    }
}

// 5. Randomized theorem soundness suite.
void criterion5(Checker& c) {
    for (Theorem t : {Theorem::plc_main, Theorem::coverage_main, Theorem::coverage_weak,
                      Theorem::wei_plc}) {
        SuiteConfig cfg;
        cfg.instances = 1000;
        cfg.seed = 20240817;
        VerificationReport rep = run_theorem_suite(t, cfg);
        std::ostringstream what;
        what << theorem_name(t) << ": " << rep.violations_total << " violations over "
             << rep.instances << " instances (" << rep.applicable << " applicable)";
        c.require(rep.violations_total == 0, what.str());
        c.require(rep.instances >= 1000, theorem_name(t) + ": at least 1000 instances evaluated");
        c.require(rep.applicable > 0, theorem_name(t) + ": suite exercised applicable cases");
        c.detail << "    " << what.str() << "\n";
    }
}

// 6. Robust neighborhood solver against subset enumeration.
void criterion6(Checker& c) {
    int checked = 0;
    std::uint64_t seed = 0;
    while (checked < 500 && seed < 5000) {
        auto inst = testutil::random_instance(seed++, 6, 14);
        const Population& pop = inst.population;
        SplitRng rng(seed * 991);
        std::vector<PointIndex> uv, av;
        for (PointIndex i = 0; i < pop.size(); ++i) {
            if (rng.coin(0.35)) uv.push_back(i);
            if (rng.coin(0.5)) av.push_back(i);
        }
        PointSet u = PointSet::of(uv), a = PointSet::of(av);
        if (pop.mass_of(a) <= 0.0) continue;
        if (inst.graph.neighborhood(u).size() > 12) continue;
        double eta = (checked % 4 == 0) ? 0.0 : rng.uniform(0.0, 0.9);

        auto oracle = testutil::enumerate_robust_size(pop, inst.graph, u, a, eta);
        RobustSizeBracket got = inst.graph.robust_neighborhood_size(pop, u, a, eta);
        c.require(got.exact, "solver exact within the enumeration regime");
        c.require(close(got.lower, oracle.value, 1e-12) && close(got.upper, oracle.value, 1e-12),
                  "solver equals subset enumeration");

        if (eta == 0.0) {
            double plain = conditional_prob(pop, inst.graph.neighborhood(u), a);
            c.require(got.lower == plain, "eta = 0 equals the plain neighborhood probability");
        }

        RobustSizeOptions greedy;
        greedy.exact_threshold = -1;
        RobustSizeBracket bracket = inst.graph.robust_neighborhood_size(pop, u, a, eta, greedy);
        c.require(bracket.lower <= got.lower + 1e-12 && got.upper <= bracket.upper + 1e-12,
                  "bracket sandwiches the exact value");
        ++checked;
    }
    c.require(checked >= 500, "checked at least 500 solver instances");
    c.detail << "    " << checked << " solver instances cross-checked\n";
}

// 7. Markov robustness conversion and good-edge weight retention.
void criterion7(Checker& c) {
    int markov_checked = 0;
    std::uint64_t seed = 0;
    while (markov_checked < 1000 && seed < 10000) {
        auto inst = testutil::random_instance(seed++, 6, 14);
        const Population& pop = inst.population;
        SplitRng rng(seed * 131);
        LabelAssignment f = testutil::random_labeling(pop, rng);

        std::vector<PointIndex> av;
        for (PointIndex i = 0; i < pop.size(); ++i)
            if (pop.mass(i) > 0.0 && inst.graph.neighbor_mass(i) > 0.0) av.push_back(i);
        PointSet a = PointSet::of(av);
        if (pop.mass_of(a) <= 0.0) continue;

        double gamma = average_robustness(inst.graph, pop, f, a);
        double eta = rng.uniform(0.05, 0.95);
        PointSet robust = robust_set(inst.graph, pop, f, eta);
        double outside = conditional_prob(pop, a.set_difference(robust), a);
        c.require(outside <= markov_robust_mass_bound(gamma, eta) + 1e-12,
                  "non-robust mass bounded by gamma/eta");
        ++markov_checked;
    }
    c.require(markov_checked >= 1000, "checked at least 1000 Markov instances");

    int weight_checked = 0;
    seed = 0;
    while (weight_checked < 1000 && seed < 10000) {
        auto inst = testutil::random_instance(seed++, 6, 14);
        SplitRng rng(seed * 137);
        LabelAssignment f = testutil::random_labeling(inst.population, rng);
        double eta = rng.uniform(0.0, 0.9);
        PointSet robust = robust_set(inst.graph, inst.population, f, eta);
        if (robust.empty()) continue;
        std::vector<PointIndex> uv;
        for (PointIndex x : robust)
            if (rng.coin(0.5)) uv.push_back(x);
        PointSet u = PointSet::of(uv);
        double lhs = inst.graph.cut_weight(inst.graph.good_edge_neighborhood(f, u), u);
        double rhs = (1.0 - eta) * inst.graph.cut_weight(inst.graph.neighborhood(u), u);
        c.require(lhs >= rhs - 1e-12, "good-edge weight retains a (1 - eta) share");
        ++weight_checked;
    }
    c.require(weight_checked >= 1000, "checked at least 1000 good-edge instances");
}

// 8. Finite-sample estimator statistics against the margin.
void criterion8(Checker& c) {
    const std::size_t n = 200, half = 100;
    std::vector<Point> points;
    for (std::size_t i = 0; i < n; ++i)
        points.push_back({"s" + std::to_string(i), 1.0 / n, 0, 0});
    Population pop = Population::from_points(points, 1);

    std::vector<PointIndex> a_side, b_side;
    for (PointIndex i = 0; i < half; ++i) a_side.push_back(i);
    for (PointIndex i = half; i < n; ++i) b_side.push_back(i);
    PointSet a = PointSet::of(a_side), b = PointSet::of(b_side);

    // Fixed oracle: i -> half + i.
    std::vector<PointIndex> oracle(half);
    for (PointIndex i = 0; i < half; ++i) oracle[i] = half + i;

    // Four family members over B with q(U) >= 0.35.
    std::vector<PointSet> family;
    auto slice = [&](std::size_t from, std::size_t count) {
        std::vector<PointIndex> v;
        for (std::size_t i = 0; i < count; ++i) v.push_back(static_cast<PointIndex>(half + from + i));
        return PointSet::of(v);
    };
    family.push_back(slice(0, 40));
    family.push_back(slice(50, 50));
    family.push_back(slice(20, 60));
    std::vector<PointIndex> spread;
    for (std::size_t i = 0; i < 100; i += 2) spread.push_back(static_cast<PointIndex>(half + i));
    family.push_back(PointSet::of(spread));

    // Exact population values of the oracle-based ratio.
    double q_bar = 1.0;
    std::vector<double> c_pop;
    for (const PointSet& u : family) {
        double numer = 0.0;
        for (PointIndex i = 0; i < half; ++i)
            if (u.contains(oracle[i])) numer += pop.mass(i);
        numer /= pop.mass_of(a);
        double denom = conditional_prob(pop, u, b);
        q_bar = std::min(q_bar, denom);
        c_pop.push_back(numer / denom);
    }
    double margin = generalization_margin(vc_of_mistake_family(2, 2), half, half, q_bar, 0.1);

    SplitRng rng(881);
    int exceed = 0;
    const int trials = 500;
    for (int t = 0; t < trials; ++t) {
        SplitRng tr = rng.substream(static_cast<std::uint64_t>(t));
        OracleSample s;
        for (std::size_t i = 0; i < half; ++i) {
            PointIndex src = a_side[tr.below(half)];
            s.sample_a.push_back(src);
            s.oracle_of_a.push_back(oracle[src]);
            s.sample_b.push_back(b_side[tr.below(half)]);
        }
        double worst = -1e9;
        bool degenerate = false;
        for (std::size_t m = 0; m < family.size(); ++m) {
            try {
                EmpiricalRatio r = empirical_expansion(s, family[m], 0.0, 0.0);
                if (r.below_threshold) {
                    degenerate = true;
                    continue;
                }
                worst = std::max(worst, r.value - c_pop[m]);
            } catch (const DomainError&) {
                degenerate = true;
            }
        }
        if (degenerate || worst > margin) ++exceed;
    }
    double fraction = static_cast<double>(exceed) / trials;
    std::ostringstream what;
    what << "exceedance fraction " << fraction << " <= 0.1 (margin " << margin << ")";
    c.require(fraction <= 0.1, what.str());
    c.detail << "    " << what.str() << "\n";
}

// 9. Baseline formula sweep.
void criterion9(Checker& c) {
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
        double alpha = static_cast<double>(i) / 999.0;
        double p_s = static_cast<double>((i * 37) % 1000) / 999.0;
        BoundReport r = fu_baseline_bound(p_s, alpha);
        double direct = p_s * 4.0 * alpha * (1.0 - alpha) + (1.0 - p_s);
        if (*r.raw_value != direct) ++bad;
    }
    c.require(bad == 0, "baseline formula exact on all 1000 grid points");
}

}  // namespace

int main(int argc, char** argv) {
    struct Criterion {
        int number;
        const char* name;
        std::function<void(Checker&)> run;
    };
    std::vector<Criterion> criteria = {
        {1, "pseudolabel-correction bound reproduction", criterion1},
        {2, "coverage bound reproduction", criterion2},
        {3, "bad-to-good expansion applicability gates", criterion3},
        {4, "co-training exactness", criterion4},
        {5, "theorem soundness suite", criterion5},
        {6, "robust neighborhood solver correctness", criterion6},
        {7, "robustness conversion and edge-weight retention", criterion7},
        {8, "estimator statistics", criterion8},
        {9, "baseline formula sweep", criterion9},
    };

    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    bool all_ok = true;
    for (const Criterion& cr : criteria) {
        if (only != 0 && cr.number != only) continue;
        Checker checker;
        auto start = std::chrono::steady_clock::now();
        try {
            cr.run(checker);
        } catch (const std::exception& e) {
            checker.ok = false;
            checker.detail << "    exception: " << e.what() << "\n";
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::printf("[%s] criterion %d: %s (%lld ms)\n", checker.ok ? "PASS" : "FAIL", cr.number,
                    cr.name, static_cast<long long>(ms));
        std::cout << checker.detail.str();
        all_ok = all_ok && checker.ok;
    }
    return all_ok ? 0 : 1;
}
