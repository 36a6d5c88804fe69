#pragma once

#include <optional>
#include <vector>

#include "wsexp/graph.hpp"
#include "wsexp/population.hpp"

namespace wsexp {

// Per-point neighbor-disagreement rates for one classifier. Points whose
// neighborhood carries no mass have undefined robustness; they are treated
// as robust everywhere downstream and excluded from averages.
struct RobustnessProfile {
    std::vector<std::optional<double>> r;  // nullopt = isolated
    std::size_t isolated_count = 0;
};

RobustnessProfile robustness_profile(const ExampleGraph& g, const Population& pop,
                                     const LabelAssignment& f);

// r(f, x): mass fraction of x's neighbors labeled differently from x.
// Throws DomainError at isolated points.
double pointwise_robustness(const ExampleGraph& g, const Population& pop,
                            const LabelAssignment& f, PointIndex x);

// All points with r(f, x) <= eta; isolated points are members for every eta.
PointSet robust_set(const ExampleGraph& g, const Population& pop, const LabelAssignment& f,
                    double eta);

// Average of r(f, x) over x ~ P(.|A). Requires P(A) > 0 and no isolated
// positive-mass point in A.
double average_robustness(const ExampleGraph& g, const Population& pop,
                          const LabelAssignment& f, const PointSet& a);

// Markov conversion: a gamma-average-robust classifier is eta-robust outside
// a set of probability at most gamma/eta. Clamped at 1. Requires eta > 0.
double markov_robust_mass_bound(double gamma, double eta);

}  // namespace wsexp
