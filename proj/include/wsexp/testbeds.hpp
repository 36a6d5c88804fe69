#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wsexp/bounds.hpp"
#include "wsexp/expansion.hpp"
#include "wsexp/graph.hpp"
#include "wsexp/population.hpp"
#include "wsexp/rng.hpp"

namespace wsexp {

inline constexpr std::size_t kHypothesisCap = 1u << 20;

// Two-view product population: the gold label is determined by the view-2
// value (class supports on view 2 must be disjoint), the teacher reads view 1
// only, and neighborhoods connect points sharing the view-2 value. The two
// views are conditionally independent given the class by construction.
struct CoTrainingSpec {
    int num_classes = 2;
    std::vector<double> class_priors;                     // k
    std::vector<std::vector<double>> view1_given_class;   // k rows over view-1 values
    std::vector<std::vector<double>> view2_given_class;   // k rows over view-2 values
    std::vector<int> teacher;                             // view-1 value -> class, -1 = abstain

    int view1_size() const { return view1_given_class.empty() ? 0 : static_cast<int>(view1_given_class[0].size()); }
    int view2_size() const { return view2_given_class.empty() ? 0 : static_cast<int>(view2_given_class[0].size()); }
    void validate() const;  // throws InputError on unnormalized or overlapping inputs
};

struct GeneratedInstance {
    Population population;
    std::vector<std::pair<std::string, std::string>> edges;
    // Per-point view values, when the generator has them (co-training).
    std::vector<int> view1_of_point;
    std::vector<int> view2_of_point;
    std::vector<std::optional<double>> realized_alpha;
    double realized_coverage = 0.0;
};

GeneratedInstance cotraining_population(const CoTrainingSpec& spec);

// Random valid spec with every class owning good, bad, and abstaining
// view-1 mass (so all four set pairs are populated) and alpha in (0, 1/2).
CoTrainingSpec random_cotraining_spec(SplitRng& rng, int num_classes = 2);

// Synthetic single-view population with planted pseudolabel error rates and
// random within-class neighborhoods (cross-class edges opt-in).
struct PlantedParams {
    int n_points = 60;
    int num_classes = 2;
    std::vector<double> alpha_targets;  // per class, in [0, 1/2)
    double coverage_target = 0.7;
    double edge_density = 0.3;
    bool cross_class_edges = false;
    bool uniform_masses = true;
};

GeneratedInstance planted_population(const PlantedParams& params, std::uint64_t seed);

// Enumerable hypothesis classes.
struct HypothesisClassSpec {
    enum class Kind { all_dichotomies, thresholds_1d, view2_measurable, explicit_list };
    Kind kind = Kind::all_dichotomies;

    // thresholds_1d: all points in increasing scalar-feature order.
    std::vector<PointIndex> feature_order;
    bool include_flipped = false;

    // view2_measurable: group id per point, labels constant within a group.
    std::vector<int> group_of_point;
    int num_groups = 0;

    std::vector<LabelAssignment> explicit_hypotheses;
};

// Enumerates every hypothesis of the class; throws DomainError when the
// count would exceed kHypothesisCap.
std::vector<LabelAssignment> enumerate_hypotheses(const HypothesisClassSpec& spec,
                                                  const Population& pop);

struct ErmResult {
    std::size_t index = 0;  // into the hypothesis list; ties break low
    double weighted_error = 0.0;
};

// Hypothesis with the least mass-weighted disagreement with the weak labels
// over the sample.
ErmResult erm_train(const Population& pop,
                    const std::vector<std::pair<PointIndex, int>>& sample,
                    const std::vector<LabelAssignment>& hypotheses);

// --- Brute-force theorem verification ---

struct VerifyConfig {
    double eta = 0.0;
    double q = 0.0;
    // Bounds are evaluated at c*(1 - c_shrink) so the strict expansion
    // inequality in the theorem statements holds at the measured minimum.
    double c_shrink = 1e-12;
    double tolerance = 1e-9;  // slack allowed before calling a violation
    double mutation = 0.0;    // subtracted from every bound (harness self-test)
};

struct Violation {
    int class_index = 0;
    std::size_t hypothesis = 0;
    double bound = 0.0;
    double true_error = 0.0;
    double c1 = 0.0, c2 = 0.0;
    double alpha = 0.0, err_weak = 0.0;
};

struct VerificationReport {
    Theorem theorem = Theorem::plc_main;
    std::size_t classes_evaluated = 0;
    std::size_t instances = 0;   // (class, hypothesis) pairs examined
    std::size_t applicable = 0;  // gate passed, bound asserted
    std::size_t vacuous = 0;     // no qualifying expansion or failed preconditions
    std::size_t violations_total = 0;
    std::vector<Violation> violations;  // witnesses, capped at 200 entries
    double max_slack = 0.0;  // largest bound - error margin among applicable
    double min_slack = 0.0;  // tightest margin among applicable

    void merge(const VerificationReport& other);
};

// For every hypothesis: measures the exact expansion of the induced family
// on the theorem's set pairs, evaluates the gate with exact joint masses, and
// asserts true error <= bound whenever applicable. Only plc-main,
// coverage-main, coverage-weak, and wei-plc are verifiable.
VerificationReport verify_theorem(const Population& pop, const ExampleGraph& g,
                                  const std::vector<LabelAssignment>& hypotheses,
                                  Theorem theorem, const VerifyConfig& cfg = {});

// Randomized soundness suite over planted instances.
struct SuiteConfig {
    std::size_t instances = 1000;
    std::uint64_t seed = 1;
    double mutation = 0.0;
    int min_points = 8;
    int max_points = 12;
    // Every large_every-th instance uses a larger population (up to 16
    // points) with an explicit random hypothesis list instead of all
    // dichotomies.
    std::size_t large_every = 50;
    std::size_t large_hypotheses = 256;
};

VerificationReport run_theorem_suite(Theorem theorem, const SuiteConfig& cfg);

}  // namespace wsexp
