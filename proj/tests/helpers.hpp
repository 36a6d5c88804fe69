#pragma once

#include <optional>
#include <vector>

#include "wsexp/graph.hpp"
#include "wsexp/population.hpp"
#include "wsexp/rng.hpp"
#include "wsexp/testbeds.hpp"

namespace testutil {

// Five uniform points a..e, all gold 0, teacher right on a and b, wrong on c,
// abstaining on d and e. Edges a-c, b-c, a-d, b-e.
inline wsexp::Population toy_population() {
    std::vector<wsexp::Point> pts = {{"a", 0.2, 0, 0},
                                     {"b", 0.2, 0, 0},
                                     {"c", 0.2, 0, 1},
                                     {"d", 0.2, 0, std::nullopt},
                                     {"e", 0.2, 0, std::nullopt}};
    return wsexp::Population::from_points(std::move(pts), 2);
}

inline wsexp::ExampleGraph toy_graph(const wsexp::Population& pop) {
    return wsexp::ExampleGraph::build_from_ids(
        pop, {{"a", "c"}, {"b", "c"}, {"a", "d"}, {"b", "e"}});
}

inline wsexp::PointSet ids(const wsexp::Population& pop, std::vector<std::string> names) {
    std::vector<wsexp::PointIndex> items;
    for (const auto& n : names) items.push_back(pop.index_of(n));
    return wsexp::PointSet::of(std::move(items));
}

// Labels by id for readable tests.
inline wsexp::LabelAssignment labels_by_id(
    const wsexp::Population& pop, const std::vector<std::pair<std::string, int>>& entries,
    int default_label = 0) {
    std::vector<int> labels(pop.size(), default_label);
    for (const auto& [id, lab] : entries) labels[pop.index_of(id)] = lab;
    return wsexp::LabelAssignment(std::move(labels));
}

// Small random population + within-class graph for property tests.
struct RandomInstance {
    wsexp::Population population;
    wsexp::ExampleGraph graph;
};

inline RandomInstance random_instance(std::uint64_t seed, int min_n = 6, int max_n = 14,
                                      bool cross_class = true) {
    wsexp::SplitRng rng(seed);
    wsexp::PlantedParams params;
    params.n_points = static_cast<int>(rng.between(min_n, max_n));
    params.num_classes = 2;
    params.alpha_targets = {rng.uniform(0.05, 0.45), rng.uniform(0.05, 0.45)};
    params.coverage_target = rng.uniform(0.3, 0.9);
    params.edge_density = rng.uniform(0.2, 0.8);
    params.cross_class_edges = cross_class;
    params.uniform_masses = rng.coin(0.5);
    wsexp::GeneratedInstance gen = wsexp::planted_population(params, rng.next());
    wsexp::ExampleGraph g = wsexp::ExampleGraph::build_from_ids(gen.population, gen.edges);
    return {std::move(gen.population), std::move(g)};
}

inline wsexp::LabelAssignment random_labeling(const wsexp::Population& pop, wsexp::SplitRng& rng) {
    std::vector<int> labels(pop.size());
    for (int& v : labels) v = static_cast<int>(rng.below(pop.num_classes()));
    return wsexp::LabelAssignment(std::move(labels));
}

}  // namespace testutil
