#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "wsexp/population.hpp"

namespace wsexp {

// Bracket on the eta-robust neighborhood size P_{1-eta}(U, A): the cheapest
// (by P(.|A)) vertex set capturing at least a (1-eta) fraction of the edge
// weight incident on U. Exact when the instance fits the exact solver.
struct RobustSizeBracket {
    double lower = 0.0;
    double upper = 0.0;
    bool exact = true;
    PointSet witness;  // achieves upper
};

struct RobustSizeOptions {
    // Paying items (positive cost, positive weight) up to this count are
    // solved exactly by branch and bound; larger instances get a
    // fractional-greedy / rounded-greedy bracket.
    int exact_threshold = 24;
};

// Symmetric neighbor structure with probability-product edge weights
// w(x, x') = P(x) * P(x') * 1[x in N(x')]. Immutable after build.
class ExampleGraph {
public:
    // Takes undirected edges as index pairs; symmetric closure and
    // deduplication applied. Self-loops are rejected.
    static ExampleGraph build(const Population& pop,
                              const std::vector<std::pair<PointIndex, PointIndex>>& edges);
    // Same, resolving string ids against the population.
    static ExampleGraph build_from_ids(const Population& pop,
                                       const std::vector<std::pair<std::string, std::string>>& edges);

    std::size_t num_points() const { return neighbors_.size(); }
    std::size_t num_edges() const { return num_edges_; }

    const std::vector<PointIndex>& neighbors(PointIndex i) const { return neighbors_[i]; }
    double point_mass(PointIndex i) const { return mass_[i]; }
    // Total mass of N(x); zero means the point is isolated for robustness purposes.
    double neighbor_mass(PointIndex i) const { return neighbor_mass_[i]; }

    // N(U): union of per-point neighborhoods.
    PointSet neighborhood(const PointSet& u) const;

    // w(x, x').
    double edge_weight(PointIndex a, PointIndex b) const;

    // w(V, U) = sum over x in V, x' in U of w(x, x').
    double cut_weight(const PointSet& v, const PointSet& u) const;

    // w(N(U), U), summed per candidate neighbor in ascending index order.
    double incident_weight(const PointSet& u) const;

    // P_{1-eta}(U, A). Requires P(A) > 0 and eta in [0, 1).
    RobustSizeBracket robust_neighborhood_size(const Population& pop, const PointSet& u,
                                               const PointSet& a, double eta,
                                               const RobustSizeOptions& opts = {}) const;

    // Neighbors of U reachable by an edge whose endpoints receive equal
    // labels under f.
    PointSet good_edge_neighborhood(const LabelAssignment& f, const PointSet& u) const;

private:
    std::vector<std::vector<PointIndex>> neighbors_;
    std::vector<double> mass_;
    std::vector<double> neighbor_mass_;
    std::size_t num_edges_ = 0;
};

// Edge file: one edge per line, two ids separated by a tab; '#' lines ignored.
std::vector<std::pair<std::string, std::string>> load_edge_list(std::istream& in);
std::vector<std::pair<std::string, std::string>> load_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Population& pop, const ExampleGraph& g);

// Coverage feasibility test shared by the solver, the greedy bracket, and the
// brute-force oracle, so all routes agree on borderline instances.
inline bool covers_target(double weight_sum, double target) {
    return weight_sum >= target - 1e-12 * (target > 1.0 ? target : 1.0);
}

}  // namespace wsexp
