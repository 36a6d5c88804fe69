#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "wsexp/common.hpp"

namespace wsexp {

// A sorted, duplicate-free set of point indices. Iteration order is always
// ascending index, which keeps every mass summation in the project canonical
// and bit-reproducible.
class PointSet {
public:
    PointSet() = default;

    // Accepts items in any order, sorts and deduplicates.
    static PointSet of(std::vector<PointIndex> items);
    static PointSet full(std::size_t n);

    void insert(PointIndex i);
    bool contains(PointIndex i) const;

    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }

    PointSet set_union(const PointSet& other) const;
    PointSet set_intersection(const PointSet& other) const;
    PointSet set_difference(const PointSet& other) const;

    const std::vector<PointIndex>& items() const { return items_; }
    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

    bool operator==(const PointSet& other) const { return items_ == other.items_; }
    bool operator<(const PointSet& other) const { return items_ < other.items_; }

private:
    std::vector<PointIndex> items_;
};

struct Point {
    std::string id;
    double mass = 0.0;
    int gold = 0;
    std::optional<int> weak;  // nullopt = teacher abstains
};

// Finite weighted point set with gold labels and (possibly abstaining)
// pseudolabels. Immutable after construction; all queries are pure.
class Population {
public:
    // Validates ids, labels, and mass accounting. Masses must sum to 1
    // within kMassTolerance; use load_population for renormalizing I/O.
    static Population from_points(std::vector<Point> points, int num_classes);

    std::size_t size() const { return points_.size(); }
    int num_classes() const { return num_classes_; }

    const Point& point(PointIndex i) const { return points_[i]; }
    const std::vector<Point>& points() const { return points_; }
    double mass(PointIndex i) const { return points_[i].mass; }

    PointIndex index_of(const std::string& id) const;  // throws InputError on unknown id
    bool has_id(const std::string& id) const { return index_.count(id) != 0; }

    // Sum of point masses over the set, in ascending index order.
    double mass_of(const PointSet& s) const;

    PointSet all_points() const { return PointSet::full(size()); }

private:
    std::vector<Point> points_;
    std::unordered_map<std::string, PointIndex> index_;
    int num_classes_ = 0;
};

// A classifier realized as a total label map over the population.
class LabelAssignment {
public:
    LabelAssignment() = default;
    explicit LabelAssignment(std::vector<int> labels) : labels_(std::move(labels)) {}

    int operator()(PointIndex i) const { return labels_[i]; }
    int label(PointIndex i) const { return labels_[i]; }
    std::size_t size() const { return labels_.size(); }
    const std::vector<int>& labels() const { return labels_; }

    // Gold labels of the population as an assignment.
    static LabelAssignment gold_of(const Population& pop);
    static LabelAssignment constant(std::size_t n, int label);

private:
    std::vector<int> labels_;
};

// Per-class partition bookkeeping (covered/uncovered, good/bad, error rate).
struct ClassPartition {
    PointSet members;       // X_i = {x : y(x) = i}
    PointSet covered;       // S_i
    PointSet uncovered;     // T_i
    PointSet covered_good;  // pseudolabel correct
    PointSet covered_bad;   // pseudolabel present but wrong
    std::optional<double> alpha;  // P(bad | S_i); nullopt when P(S_i) = 0
};

struct Partition {
    PointSet covered;    // S
    PointSet uncovered;  // T
    std::vector<ClassPartition> per_class;
};

Partition make_partition(const Population& pop);

// Classes usable for bound evaluation: P(S_i) > 0 and alpha_i in (0, 1/2).
// Returns class indices; excluded classes get a diagnostic string appended
// to `diagnostics` when non-null.
std::vector<int> eligible_classes(const Population& pop, const Partition& part,
                                  std::vector<std::string>* diagnostics = nullptr);

// P(U | A) = P(U and A) / P(A). Throws DomainError when P(A) = 0.
double conditional_prob(const Population& pop, const PointSet& u, const PointSet& a);

// Mass-weighted disagreement rate P(f != g | U). Throws when P(U) = 0.
double disagreement(const Population& pop, const LabelAssignment& f,
                    const LabelAssignment& g, const PointSet& u);

// Disagreement against the pseudolabels. U must contain no abstaining points.
double disagreement_with_weak(const Population& pop, const LabelAssignment& f,
                              const PointSet& u);

// --- I/O (formats documented in the README) ---

// Population file: JSON Lines, one object per point:
//   {"id": string, "mass": number?, "y": int, "weak": int | null}
// Mass omitted on every point means uniform. Sums within kRenormTolerance of 1
// are renormalized; anything else is an error. num_classes is inferred from
// the labels unless an override is given.
Population load_population(std::istream& in, std::optional<int> num_classes = std::nullopt);
Population load_population_file(const std::string& path, std::optional<int> num_classes = std::nullopt);

void write_population(std::ostream& out, const Population& pop);

// Prediction file: JSON Lines {"id": string, "pred": int}. May be partial;
// use to_total to require totality.
struct PartialLabeling {
    std::unordered_map<PointIndex, int> labels;
    // Throws InputError when any population point is missing.
    LabelAssignment to_total(const Population& pop) const;
    bool total(const Population& pop) const { return labels.size() == pop.size(); }
};

PartialLabeling load_predictions(std::istream& in, const Population& pop);
PartialLabeling load_predictions_file(const std::string& path, const Population& pop);

}  // namespace wsexp
