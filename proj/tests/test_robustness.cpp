#include "doctest.h"
#include "helpers.hpp"
#include "wsexp/robustness.hpp"

using namespace wsexp;

TEST_CASE("pointwise_robustness: toy values") {
    Population pop = testutil::toy_population();
    ExampleGraph g = testutil::toy_graph(pop);

    SUBCASE("constant classifier is robust at every non-isolated point") {
        LabelAssignment f = LabelAssignment::constant(pop.size(), 0);
        for (PointIndex i = 0; i < pop.size(); ++i)
            CHECK(pointwise_robustness(g, pop, f, i) == 0.0);
    }
    SUBCASE("one flipped point splits its neighbor") {
        LabelAssignment f = testutil::labels_by_id(pop, {{"a", 1}});
        CHECK(pointwise_robustness(g, pop, f, pop.index_of("c")) == doctest::Approx(0.5));
        CHECK(pointwise_robustness(g, pop, f, pop.index_of("a")) == doctest::Approx(1.0));
    }
    SUBCASE("isolated point is an error") {
        Population pop2 =
            Population::from_points({{"x", 0.5, 0, 0}, {"y", 0.5, 0, 0}}, 1);
        ExampleGraph g2 = ExampleGraph::build_from_ids(pop2, {});
        LabelAssignment f = LabelAssignment::constant(2, 0);
        CHECK_THROWS_AS(pointwise_robustness(g2, pop2, f, 0), DomainError);
    }
}

TEST_CASE("robust_set: toy cases and policies") {
    Population pop = testutil::toy_population();
    ExampleGraph g = testutil::toy_graph(pop);

    SUBCASE("eta = 1 admits everything") {
        SplitRng rng(7);
        LabelAssignment f = testutil::random_labeling(pop, rng);
        CHECK(robust_set(g, pop, f, 1.0) == pop.all_points());
    }
    SUBCASE("constant classifier is robust everywhere at eta = 0") {
        LabelAssignment f = LabelAssignment::constant(pop.size(), 0);
        CHECK(robust_set(g, pop, f, 0.0) == pop.all_points());
    }
    SUBCASE("flipped point excludes itself and disagreeing neighbors") {
        LabelAssignment f = testutil::labels_by_id(pop, {{"a", 1}});
        CHECK(robust_set(g, pop, f, 0.0) == testutil::ids(pop, {"b", "e"}));
    }
    SUBCASE("isolated points are members for every eta") {
        Population pop2 =
            Population::from_points({{"x", 0.5, 0, 0}, {"y", 0.5, 1, 1}}, 2);
        ExampleGraph g2 = ExampleGraph::build_from_ids(pop2, {});
        LabelAssignment f(std::vector<int>{0, 1});
        CHECK(robust_set(g2, pop2, f, 0.0) == pop2.all_points());
        RobustnessProfile prof = robustness_profile(g2, pop2, f);
        CHECK(prof.isolated_count == 2);
    }
}

TEST_CASE("robust_set: monotone in eta") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto inst = testutil::random_instance(seed);
        SplitRng rng(seed + 123);
        LabelAssignment f = testutil::random_labeling(inst.population, rng);
        PointSet prev;
        for (double eta : {0.0, 0.2, 0.5, 0.8, 1.0}) {
            PointSet cur = robust_set(inst.graph, inst.population, f, eta);
            CHECK(prev.set_difference(cur).empty());
            prev = cur;
        }
    }
}

TEST_CASE("average_robustness: toy values and errors") {
    Population pop = testutil::toy_population();
    ExampleGraph g = testutil::toy_graph(pop);

    LabelAssignment constant = LabelAssignment::constant(pop.size(), 0);
    CHECK(average_robustness(g, pop, constant, pop.all_points()) == 0.0);

    LabelAssignment f = testutil::labels_by_id(pop, {{"a", 1}});
    CHECK(average_robustness(g, pop, f, testutil::ids(pop, {"c"})) == doctest::Approx(0.5));

    // Fully anti-aligned classifier on a bipartite pair.
    Population pair = Population::from_points({{"x", 0.5, 0, 0}, {"y", 0.5, 0, 0}}, 2);
    ExampleGraph gpair = ExampleGraph::build_from_ids(pair, {{"x", "y"}});
    LabelAssignment anti(std::vector<int>{0, 1});
    CHECK(average_robustness(gpair, pair, anti, pair.all_points()) == 1.0);

    SUBCASE("isolated positive-mass point rejected") {
        Population pop2 = Population::from_points({{"x", 0.5, 0, 0}, {"y", 0.5, 0, 0}}, 1);
        ExampleGraph g2 = ExampleGraph::build_from_ids(pop2, {});
        CHECK_THROWS_AS(average_robustness(g2, pop2, constant, pop2.all_points()), DomainError);
    }
    SUBCASE("zero-mass conditioning set rejected") {
        CHECK_THROWS_AS(average_robustness(g, pop, constant, PointSet()), DomainError);
    }
}

TEST_CASE("markov_robust_mass_bound: formula and clamp") {
    CHECK(markov_robust_mass_bound(0.0, 0.5) == 0.0);
    CHECK(markov_robust_mass_bound(0.02, 0.1) == doctest::Approx(0.2));
    CHECK(markov_robust_mass_bound(0.5, 0.1) == 1.0);
    CHECK_THROWS_AS(markov_robust_mass_bound(0.1, 0.0), DomainError);
    CHECK_THROWS_AS(markov_robust_mass_bound(-0.1, 0.5), DomainError);
}

TEST_CASE("markov conversion property: measured non-robust mass obeys gamma/eta") {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 250 && checked < 150; ++seed) {
        auto inst = testutil::random_instance(seed, 6, 14);
        const Population& pop = inst.population;
        SplitRng rng(seed + 777);
        LabelAssignment f = testutil::random_labeling(pop, rng);

        // Condition on the non-isolated positive-mass points.
        std::vector<PointIndex> av;
        for (PointIndex i = 0; i < pop.size(); ++i)
            if (pop.mass(i) > 0.0 && inst.graph.neighbor_mass(i) > 0.0) av.push_back(i);
        PointSet a = PointSet::of(av);
        if (pop.mass_of(a) <= 0.0) continue;

        double gamma = average_robustness(inst.graph, pop, f, a);
        double eta = rng.uniform(0.05, 0.9);
        PointSet robust = robust_set(inst.graph, pop, f, eta);
        double outside = conditional_prob(pop, a.set_difference(robust), a);
        CHECK(outside <= markov_robust_mass_bound(gamma, eta) + 1e-12);
        ++checked;
    }
    CHECK(checked >= 100);
}

TEST_CASE("zero robustness everywhere iff constant on components") {
    // On a connected pair, r = 0 for all points forces equal labels.
    Population pair = Population::from_points({{"x", 0.5, 0, 0}, {"y", 0.5, 0, 0}}, 2);
    ExampleGraph g = ExampleGraph::build_from_ids(pair, {{"x", "y"}});
    LabelAssignment same(std::vector<int>{1, 1});
    LabelAssignment differ(std::vector<int>{0, 1});
    CHECK(average_robustness(g, pair, same, pair.all_points()) == 0.0);
    CHECK(average_robustness(g, pair, differ, pair.all_points()) > 0.0);
}
