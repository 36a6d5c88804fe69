#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wsexp/graph.hpp"
#include "wsexp/population.hpp"

namespace wsexp {

enum class FamilyKind { mistakes, non_mistakes };

// A named collection of subsets of a base set B, typically derived from the
// robust (non-)mistake sets of a list of classifiers.
struct SetFamily {
    std::string name;
    PointSet base;                  // B
    std::vector<PointSet> members;  // deduplicated, each a subset of base
};

// For each classifier f: the eta-robust points of B where f errs on the gold
// labels (kind = mistakes) or matches them (kind = non_mistakes).
SetFamily mistake_family(const Population& pop, const ExampleGraph& g, const PointSet& base,
                         const std::vector<LabelAssignment>& classifiers, double eta,
                         FamilyKind kind, const std::string& name = "");

// The per-classifier set without family assembly.
PointSet robust_outcome_set(const Population& pop, const ExampleGraph& g, const PointSet& base,
                            const LabelAssignment& f, double eta, FamilyKind kind);

enum class ExpansionMode { exact, robust_bracket, empirical };

// Minimum expansion ratio of a family on the set pair (A, B). In bracket mode
// [lo, hi] sandwiches the true minimum and c carries the certified lower
// estimate; in the other modes lo == hi == c.
struct ExpansionEstimate {
    bool has_qualifying = false;  // false: every member had P(U|B) <= q
    double c = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    ExpansionMode mode = ExpansionMode::exact;
    double q = 0.0;
    double eta = 0.0;
    PointSet witness;  // member attaining the certified minimum
};

// c = min over members U with P(U|B) > q of P(N(U)|A) / P(U|B); for eta > 0
// the robust neighborhood size replaces P(N(U)|A) and the result may be a
// bracket. Requires P(A) > 0 and P(B) > 0.
ExpansionEstimate exact_expansion(const ExampleGraph& g, const Population& pop,
                                  const SetFamily& family, const PointSet& a, const PointSet& b,
                                  double q, double eta,
                                  const RobustSizeOptions& opts = {});

// Finite samples from P(.|A) and P(.|B) plus a neighborhood oracle mapping
// each sampled A-point to one of its declared neighbors in B. Sample vectors
// may contain repeats (i.i.d. draws).
struct OracleSample {
    std::vector<PointIndex> sample_a;
    std::vector<PointIndex> sample_b;
    std::vector<PointIndex> oracle_of_a;  // parallel to sample_a

    void validate_against(const ExampleGraph& g) const;  // oracle targets must be neighbors
};

struct EmpiricalRatio {
    bool below_threshold = false;  // empirical q-constraint failed
    double value = 0.0;
    double numer_frac = 0.0;
    double denom_frac = 0.0;
};

// Plug-in estimate (1/n_A) sum 1[n(x) in U] / (1/n_B) sum 1[x in U], subject
// to the denominator clearing q - epsilon.
EmpiricalRatio empirical_expansion(const OracleSample& sample, const PointSet& u, double q,
                                   double epsilon);

// One-sided Hoeffding radius used as the default empirical slack.
double default_epsilon(std::size_t n_b, double delta = 0.05);

// Randomized search for the worst empirical expansion over retrained
// classifiers.
using Learner = std::function<LabelAssignment(const std::vector<std::pair<PointIndex, int>>&)>;

struct HeuristicDraw {
    int draw = 0;
    bool qualifying = false;
    double c_hat = 0.0;
    double denom_frac = 0.0;
    std::size_t witness_size = 0;
};

struct HeuristicConfig {
    int resamples = 5;
    double resample_fraction = 0.8;
    double q = 0.0;
    std::optional<double> epsilon;  // default: Hoeffding radius for n_B
    double eta = 0.0;
    std::uint64_t seed = 0;
    bool learner_stochastic = false;  // caveat flag copied to the result
};

struct HeuristicResult {
    bool has_qualifying = false;
    double c_min = 0.0;
    int best_draw = -1;
    PointSet witness;
    std::vector<HeuristicDraw> trace;
    bool stochastic_learner_caveat = false;
};

// Draws `resamples` subsets of the covered training pool (each
// resample_fraction of it, without replacement, independently seeded per
// draw), trains a classifier on each, derives its robust outcome set on B,
// and keeps the smallest qualifying empirical expansion.
HeuristicResult heuristic_min_expansion(const Population& pop, const ExampleGraph& g,
                                        const std::vector<PointIndex>& train_pool,
                                        const Learner& learner, const OracleSample& oracle,
                                        FamilyKind kind, const PointSet& b,
                                        const HeuristicConfig& cfg);

// Finite-sample margin for the empirical expansion estimate:
//   4(4 + sqrt(g)) * sqrt((vc * ln(2em/vc) + ln(8/delta)) / (n_a * q_bar^2))
// with g = n_b * q_bar / n_a and m = n_a + n_b. Natural logarithms. The
// value may exceed 1; vacuity is informative and not clamped.
double generalization_margin(int vc, std::size_t n_a, std::size_t n_b, double q_bar,
                             double delta);

// Mistake families of binary hypothesis classes inherit the class's VC
// dimension. Only stated for two classes.
int vc_of_mistake_family(int vc_of_hypotheses, int num_classes = 2);

// Oracle pairs file: "source_id<TAB>target_id" per line; sample files carry
// one id per line. Repeats allowed in samples.
OracleSample load_oracle_sample(const Population& pop, std::istream& pairs,
                                std::istream& sample_a, std::istream& sample_b);
OracleSample load_oracle_sample_files(const Population& pop, const std::string& pairs_path,
                                      const std::string& sample_a_path,
                                      const std::string& sample_b_path);

}  // namespace wsexp
