#include "wsexp/population.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace wsexp {

using nlohmann::json;

PointSet PointSet::of(std::vector<PointIndex> items) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    PointSet s;
    s.items_ = std::move(items);
    return s;
}

PointSet PointSet::full(std::size_t n) {
    PointSet s;
    s.items_.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.items_[i] = static_cast<PointIndex>(i);
    return s;
}

void PointSet::insert(PointIndex i) {
    auto it = std::lower_bound(items_.begin(), items_.end(), i);
    if (it == items_.end() || *it != i) items_.insert(it, i);
}

bool PointSet::contains(PointIndex i) const {
    return std::binary_search(items_.begin(), items_.end(), i);
}

PointSet PointSet::set_union(const PointSet& other) const {
    PointSet out;
    out.items_.reserve(items_.size() + other.items_.size());
    std::set_union(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                   std::back_inserter(out.items_));
    return out;
}

PointSet PointSet::set_intersection(const PointSet& other) const {
    PointSet out;
    std::set_intersection(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                          std::back_inserter(out.items_));
    return out;
}

PointSet PointSet::set_difference(const PointSet& other) const {
    PointSet out;
    std::set_difference(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                        std::back_inserter(out.items_));
    return out;
}

Population Population::from_points(std::vector<Point> points, int num_classes) {
    if (points.empty()) throw InputError("population is empty");
    if (num_classes < 1) throw InputError("num_classes must be positive");

    Population pop;
    pop.num_classes_ = num_classes;
    pop.index_.reserve(points.size());

    double sum = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Point& p = points[i];
        if (p.id.empty()) throw InputError("point with empty id");
        if (!pop.index_.emplace(p.id, static_cast<PointIndex>(i)).second)
            throw InputError("duplicate point id: " + p.id);
        if (!(p.mass >= 0.0) || !std::isfinite(p.mass))
            throw InputError("negative or non-finite mass for point " + p.id);
        if (p.gold < 0 || p.gold >= num_classes)
            throw InputError("gold label out of range for point " + p.id);
        if (p.weak && (*p.weak < 0 || *p.weak >= num_classes))
            throw InputError("weak label out of range for point " + p.id);
        sum += p.mass;
    }
    if (std::abs(sum - 1.0) > kMassTolerance) {
        std::ostringstream msg;
        msg << "point masses sum to " << sum << ", expected 1 within " << kMassTolerance;
        throw InputError(msg.str());
    }
    pop.points_ = std::move(points);
    return pop;
}

PointIndex Population::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw InputError("unknown point id: " + id);
    return it->second;
}

double Population::mass_of(const PointSet& s) const {
    double m = 0.0;
    for (PointIndex i : s) m += points_[i].mass;
    return m;
}

LabelAssignment LabelAssignment::gold_of(const Population& pop) {
    std::vector<int> labels(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) labels[i] = pop.point(static_cast<PointIndex>(i)).gold;
    return LabelAssignment(std::move(labels));
}

LabelAssignment LabelAssignment::constant(std::size_t n, int label) {
    return LabelAssignment(std::vector<int>(n, label));
}

Partition make_partition(const Population& pop) {
    Partition part;
    part.per_class.resize(static_cast<std::size_t>(pop.num_classes()));

    std::vector<std::vector<PointIndex>> members(pop.num_classes()), covered(pop.num_classes()),
        uncovered(pop.num_classes()), good(pop.num_classes()), bad(pop.num_classes());
    std::vector<PointIndex> s_all, t_all;

    for (PointIndex i = 0; i < pop.size(); ++i) {
        const Point& p = pop.point(i);
        members[p.gold].push_back(i);
        if (p.weak) {
            covered[p.gold].push_back(i);
            s_all.push_back(i);
            (*p.weak == p.gold ? good : bad)[p.gold].push_back(i);
        } else {
            uncovered[p.gold].push_back(i);
            t_all.push_back(i);
        }
    }

    part.covered = PointSet::of(std::move(s_all));
    part.uncovered = PointSet::of(std::move(t_all));
    for (int c = 0; c < pop.num_classes(); ++c) {
        ClassPartition& cp = part.per_class[c];
        cp.members = PointSet::of(std::move(members[c]));
        cp.covered = PointSet::of(std::move(covered[c]));
        cp.uncovered = PointSet::of(std::move(uncovered[c]));
        cp.covered_good = PointSet::of(std::move(good[c]));
        cp.covered_bad = PointSet::of(std::move(bad[c]));
        double s_mass = pop.mass_of(cp.covered);
        if (s_mass > 0.0) cp.alpha = pop.mass_of(cp.covered_bad) / s_mass;
    }
    return part;
}

std::vector<int> eligible_classes(const Population& pop, const Partition& part,
                                  std::vector<std::string>* diagnostics) {
    std::vector<int> out;
    for (int c = 0; c < pop.num_classes(); ++c) {
        const ClassPartition& cp = part.per_class[c];
        std::ostringstream why;
        if (!cp.alpha) {
            why << "class " << c << ": no covered mass, alpha undefined";
        } else if (!(*cp.alpha > 0.0 && *cp.alpha < 0.5)) {
            why << "class " << c << ": alpha=" << *cp.alpha << " outside (0, 1/2)";
        } else {
            out.push_back(c);
            continue;
        }
        if (diagnostics) diagnostics->push_back(why.str());
    }
    return out;
}

double conditional_prob(const Population& pop, const PointSet& u, const PointSet& a) {
    double denom = pop.mass_of(a);
    if (denom <= 0.0) throw DomainError("conditional probability undefined: P(A) = 0");
    return pop.mass_of(u.set_intersection(a)) / denom;
}

double disagreement(const Population& pop, const LabelAssignment& f,
                    const LabelAssignment& g, const PointSet& u) {
    double denom = pop.mass_of(u);
    if (denom <= 0.0) throw DomainError("disagreement undefined: P(U) = 0");
    double num = 0.0;
    for (PointIndex i : u)
        if (f(i) != g(i)) num += pop.mass(i);
    return num / denom;
}

double disagreement_with_weak(const Population& pop, const LabelAssignment& f,
                              const PointSet& u) {
    double denom = pop.mass_of(u);
    if (denom <= 0.0) throw DomainError("disagreement undefined: P(U) = 0");
    double num = 0.0;
    for (PointIndex i : u) {
        const Point& p = pop.point(i);
        if (!p.weak)
            throw DomainError("disagreement with weak labels: abstaining point " + p.id +
                              " in conditioning set");
        if (f(i) != *p.weak) num += p.mass;
    }
    return num / denom;
}

namespace {

json parse_line(const std::string& line, int line_no) {
    try {
        return json::parse(line);
    } catch (const json::exception& e) {
        throw InputError("line " + std::to_string(line_no) + ": " + e.what());
    }
}

}  // namespace

Population load_population(std::istream& in, std::optional<int> num_classes) {
    std::vector<Point> points;
    std::string line;
    int line_no = 0;
    int masses_given = 0;
    int max_label = -1;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j = parse_line(line, line_no);
        if (!j.is_object()) throw InputError("line " + std::to_string(line_no) + ": expected object");

        Point p;
        if (!j.contains("id") || !j["id"].is_string())
            throw InputError("line " + std::to_string(line_no) + ": missing string \"id\"");
        p.id = j["id"].get<std::string>();
        if (!j.contains("y") || !j["y"].is_number_integer())
            throw InputError("line " + std::to_string(line_no) + ": missing integer \"y\"");
        p.gold = j["y"].get<int>();
        if (p.gold < 0) throw InputError("line " + std::to_string(line_no) + ": negative gold label");
        max_label = std::max(max_label, p.gold);
        if (j.contains("weak") && !j["weak"].is_null()) {
            if (!j["weak"].is_number_integer())
                throw InputError("line " + std::to_string(line_no) + ": \"weak\" must be int or null");
            p.weak = j["weak"].get<int>();
            if (*p.weak < 0)
                throw InputError("line " + std::to_string(line_no) + ": negative weak label");
            max_label = std::max(max_label, *p.weak);
        }
        if (j.contains("mass")) {
            if (!j["mass"].is_number())
                throw InputError("line " + std::to_string(line_no) + ": \"mass\" must be a number");
            p.mass = j["mass"].get<double>();
            ++masses_given;
        }
        points.push_back(std::move(p));
    }
    if (points.empty()) throw InputError("population file has no points");
    if (masses_given != 0 && masses_given != static_cast<int>(points.size()))
        throw InputError("either every point or no point may carry an explicit mass");

    if (masses_given == 0)
        for (Point& p : points) p.mass = 1.0 / static_cast<double>(points.size());

    double sum = 0.0;
    for (const Point& p : points) {
        if (!(p.mass >= 0.0) || !std::isfinite(p.mass))
            throw InputError("negative or non-finite mass for point " + p.id);
        sum += p.mass;
    }
    if (std::abs(sum - 1.0) > kRenormTolerance) {
        std::ostringstream msg;
        msg << "mass sum " << sum << " outside renormalization tolerance [1-1e-6, 1+1e-6]";
        throw InputError(msg.str());
    }
    for (Point& p : points) p.mass /= sum;

    int k = num_classes.value_or(max_label + 1);
    if (k < 1) k = 1;
    return Population::from_points(std::move(points), k);
}

Population load_population_file(const std::string& path, std::optional<int> num_classes) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open population file: " + path);
    return load_population(in, num_classes);
}

void write_population(std::ostream& out, const Population& pop) {
    for (const Point& p : pop.points()) {
        json j;
        j["id"] = p.id;
        j["mass"] = p.mass;
        j["y"] = p.gold;
        j["weak"] = p.weak ? json(*p.weak) : json(nullptr);
        out << j.dump() << "\n";
    }
}

LabelAssignment PartialLabeling::to_total(const Population& pop) const {
    std::vector<int> out(pop.size(), -1);
    for (const auto& [idx, label] : labels) out[idx] = label;
    for (PointIndex i = 0; i < pop.size(); ++i)
        if (out[i] < 0)
            throw InputError("prediction file is missing point " + pop.point(i).id);
    return LabelAssignment(std::move(out));
}

PartialLabeling load_predictions(std::istream& in, const Population& pop) {
    PartialLabeling out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j = parse_line(line, line_no);
        if (!j.contains("id") || !j["id"].is_string() || !j.contains("pred") ||
            !j["pred"].is_number_integer())
            throw InputError("line " + std::to_string(line_no) +
                             ": expected {\"id\": string, \"pred\": int}");
        PointIndex idx = pop.index_of(j["id"].get<std::string>());
        int pred = j["pred"].get<int>();
        if (pred < 0 || pred >= pop.num_classes())
            throw InputError("line " + std::to_string(line_no) + ": prediction out of range");
        if (!out.labels.emplace(idx, pred).second)
            throw InputError("line " + std::to_string(line_no) + ": duplicate prediction for id " +
                             j["id"].get<std::string>());
    }
    return out;
}

PartialLabeling load_predictions_file(const std::string& path, const Population& pop) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open prediction file: " + path);
    return load_predictions(in, pop);
}

}  // namespace wsexp
