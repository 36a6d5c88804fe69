#include "wsexp/robustness.hpp"

#include <algorithm>

namespace wsexp {

RobustnessProfile robustness_profile(const ExampleGraph& g, const Population& pop,
                                     const LabelAssignment& f) {
    RobustnessProfile prof;
    prof.r.resize(g.num_points());
    for (PointIndex x = 0; x < g.num_points(); ++x) {
        double denom = g.neighbor_mass(x);
        if (denom <= 0.0) {
            ++prof.isolated_count;
            continue;
        }
        double diff = 0.0;
        for (PointIndex y : g.neighbors(x))
            if (f(y) != f(x)) diff += pop.mass(y);
        prof.r[x] = diff / denom;
    }
    return prof;
}

double pointwise_robustness(const ExampleGraph& g, const Population& pop,
                            const LabelAssignment& f, PointIndex x) {
    double denom = g.neighbor_mass(x);
    if (denom <= 0.0)
        throw DomainError("pointwise robustness undefined at isolated point " + pop.point(x).id);
    double diff = 0.0;
    for (PointIndex y : g.neighbors(x))
        if (f(y) != f(x)) diff += pop.mass(y);
    return diff / denom;
}

PointSet robust_set(const ExampleGraph& g, const Population& pop, const LabelAssignment& f,
                    double eta) {
    RobustnessProfile prof = robustness_profile(g, pop, f);
    std::vector<PointIndex> out;
    for (PointIndex x = 0; x < g.num_points(); ++x)
        if (!prof.r[x] || *prof.r[x] <= eta) out.push_back(x);
    return PointSet::of(std::move(out));
}

double average_robustness(const ExampleGraph& g, const Population& pop,
                          const LabelAssignment& f, const PointSet& a) {
    double denom = pop.mass_of(a);
    if (denom <= 0.0) throw DomainError("average robustness undefined: P(A) = 0");
    double acc = 0.0;
    for (PointIndex x : a) {
        if (pop.mass(x) <= 0.0) continue;
        if (g.neighbor_mass(x) <= 0.0)
            throw DomainError("average robustness: isolated positive-mass point " +
                              pop.point(x).id + " in conditioning set");
        acc += pop.mass(x) * pointwise_robustness(g, pop, f, x);
    }
    return acc / denom;
}

double markov_robust_mass_bound(double gamma, double eta) {
    if (!(eta > 0.0)) throw DomainError("markov_robust_mass_bound requires eta > 0");
    if (gamma < 0.0) throw DomainError("markov_robust_mass_bound requires gamma >= 0");
    return std::min(1.0, gamma / eta);
}

}  // namespace wsexp
