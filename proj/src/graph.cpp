#include "wsexp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace wsexp {

ExampleGraph ExampleGraph::build(const Population& pop,
                                 const std::vector<std::pair<PointIndex, PointIndex>>& edges) {
    const std::size_t n = pop.size();
    ExampleGraph g;
    g.neighbors_.resize(n);
    g.mass_.resize(n);
    for (PointIndex i = 0; i < n; ++i) g.mass_[i] = pop.mass(i);

    for (const auto& [a, b] : edges) {
        if (a >= n || b >= n) throw InputError("edge endpoint index out of range");
        if (a == b) throw InputError("self-loop rejected for point " + pop.point(a).id);
        g.neighbors_[a].push_back(b);
        g.neighbors_[b].push_back(a);
    }
    for (auto& nb : g.neighbors_) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        g.num_edges_ += nb.size();
    }
    g.num_edges_ /= 2;

    g.neighbor_mass_.resize(n, 0.0);
    for (PointIndex i = 0; i < n; ++i) {
        double m = 0.0;
        for (PointIndex j : g.neighbors_[i]) m += g.mass_[j];
        g.neighbor_mass_[i] = m;
    }
    return g;
}

ExampleGraph ExampleGraph::build_from_ids(
    const Population& pop, const std::vector<std::pair<std::string, std::string>>& edges) {
    std::vector<std::pair<PointIndex, PointIndex>> resolved;
    resolved.reserve(edges.size());
    for (const auto& [a, b] : edges) resolved.emplace_back(pop.index_of(a), pop.index_of(b));
    return build(pop, resolved);
}

PointSet ExampleGraph::neighborhood(const PointSet& u) const {
    std::vector<char> mark(num_points(), 0);
    for (PointIndex x : u)
        for (PointIndex y : neighbors_[x]) mark[y] = 1;
    std::vector<PointIndex> out;
    for (PointIndex i = 0; i < mark.size(); ++i)
        if (mark[i]) out.push_back(i);
    return PointSet::of(std::move(out));
}

double ExampleGraph::edge_weight(PointIndex a, PointIndex b) const {
    if (!std::binary_search(neighbors_[a].begin(), neighbors_[a].end(), b)) return 0.0;
    return mass_[a] * mass_[b];
}

double ExampleGraph::cut_weight(const PointSet& v, const PointSet& u) const {
    std::vector<char> in_v(num_points(), 0);
    for (PointIndex x : v) in_v[x] = 1;
    double total = 0.0;
    for (PointIndex x : u) {
        double nb_mass = 0.0;
        for (PointIndex y : neighbors_[x])
            if (in_v[y]) nb_mass += mass_[y];
        total += mass_[x] * nb_mass;
    }
    return total;
}

double ExampleGraph::incident_weight(const PointSet& u) const {
    std::vector<char> in_u(num_points(), 0);
    for (PointIndex x : u) in_u[x] = 1;
    double total = 0.0;
    for (PointIndex v : neighborhood(u)) {
        double touching = 0.0;
        for (PointIndex y : neighbors_[v])
            if (in_u[y]) touching += mass_[y];
        total += mass_[v] * touching;
    }
    return total;
}

namespace {

struct CoverItem {
    PointIndex point;
    double cost;    // P(v | A)
    double weight;  // w(v, U)
};

// Fractional-greedy completion cost for covering `needed` using items[i..).
// Items must be sorted by cost/weight ascending. Infinity when infeasible.
double fractional_completion(const std::vector<CoverItem>& items, std::size_t i, double needed) {
    double cost = 0.0;
    for (; i < items.size() && needed > 0.0; ++i) {
        if (items[i].weight >= needed) {
            cost += items[i].cost * (needed / items[i].weight);
            return cost;
        }
        cost += items[i].cost;
        needed -= items[i].weight;
    }
    return needed > 0.0 ? std::numeric_limits<double>::infinity() : cost;
}

struct BranchState {
    const std::vector<CoverItem>* items;
    double target;        // paying weight still required (after free items)
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<char> chosen, best;
    std::vector<double> suffix_weight;  // total weight of items[i..)

    void search(std::size_t i, double cost, double covered) {
        if (covers_target(covered, target)) {
            if (cost < best_cost) {
                best_cost = cost;
                best = chosen;
            }
            return;
        }
        if (i == items->size()) return;
        if (!covers_target(covered + suffix_weight[i], target)) return;  // cannot finish
        double bound = fractional_completion(*items, i, target - covered);
        if (cost + bound >= best_cost) return;

        chosen[i] = 1;
        search(i + 1, cost + (*items)[i].cost, covered + (*items)[i].weight);
        chosen[i] = 0;
        search(i + 1, cost, covered);
    }
};

}  // namespace

RobustSizeBracket ExampleGraph::robust_neighborhood_size(const Population& pop, const PointSet& u,
                                                         const PointSet& a, double eta,
                                                         const RobustSizeOptions& opts) const {
    if (!(eta >= 0.0 && eta < 1.0)) throw DomainError("robust_neighborhood_size: eta outside [0, 1)");
    const double a_mass = pop.mass_of(a);
    if (a_mass <= 0.0) throw DomainError("robust_neighborhood_size: P(A) = 0");

    std::vector<char> in_u(num_points(), 0);
    for (PointIndex x : u) in_u[x] = 1;

    // Candidate neighbors carrying positive incident weight; zero-weight
    // points can never help the coverage constraint.
    std::vector<CoverItem> paying;
    std::vector<PointIndex> candidates, free_points;
    double total_weight = 0.0, free_weight = 0.0;
    for (PointIndex v : neighborhood(u)) {
        double touching = 0.0;
        for (PointIndex y : neighbors_[v])
            if (in_u[y]) touching += mass_[y];
        double w = mass_[v] * touching;
        if (w <= 0.0) continue;
        candidates.push_back(v);
        total_weight += w;
        double cost = a.contains(v) ? mass_[v] / a_mass : 0.0;
        if (cost <= 0.0) {
            free_points.push_back(v);
            free_weight += w;
        } else {
            paying.push_back({v, cost, w});
        }
    }

    RobustSizeBracket out;
    if (total_weight <= 0.0) {
        // Isolated U: empty V is feasible, P_{1-eta} = 0.
        return out;
    }

    if (eta == 0.0) {
        // Every positive-weight candidate is required; the value reduces to
        // the conditional probability of the candidate set, computed with the
        // same arithmetic as conditional_prob.
        PointSet cand = PointSet::of(candidates);
        out.lower = out.upper = pop.mass_of(cand.set_intersection(a)) / a_mass;
        out.exact = true;
        out.witness = std::move(cand);
        return out;
    }

    const double target = (1.0 - eta) * total_weight;
    if (covers_target(free_weight, target)) {
        out.lower = out.upper = 0.0;
        out.exact = true;
        out.witness = PointSet::of(free_points);
        return out;
    }

    // Sort paying items by cost per unit weight, ties by ascending point id.
    std::sort(paying.begin(), paying.end(), [](const CoverItem& x, const CoverItem& y) {
        double lhs = x.cost * y.weight, rhs = y.cost * x.weight;
        if (lhs != rhs) return lhs < rhs;
        return x.point < y.point;
    });
    const double paying_target = target - free_weight;

    if (static_cast<int>(paying.size()) <= opts.exact_threshold) {
        BranchState st;
        st.items = &paying;
        st.target = paying_target;
        st.chosen.assign(paying.size(), 0);
        st.suffix_weight.assign(paying.size() + 1, 0.0);
        for (std::size_t i = paying.size(); i-- > 0;)
            st.suffix_weight[i] = st.suffix_weight[i + 1] + paying[i].weight;
        st.search(0, 0.0, 0.0);

        std::vector<PointIndex> chosen_points = free_points;
        for (std::size_t i = 0; i < paying.size(); ++i)
            if (st.best[i]) chosen_points.push_back(paying[i].point);
        PointSet witness = PointSet::of(std::move(chosen_points));
        // Canonical cost recomputation keeps the reported value independent
        // of the search order.
        double cost = pop.mass_of(witness.set_intersection(a)) / a_mass;
        out.lower = out.upper = cost;
        out.exact = true;
        out.witness = std::move(witness);
        return out;
    }

    // Bracket: fractional greedy gives the LP optimum (lower bound); rounding
    // the fractional item up gives a feasible integral solution (upper bound).
    double covered = 0.0, cost_full = 0.0;
    double lower = 0.0, upper = 0.0;
    bool fractional = false;
    std::vector<PointIndex> taken = free_points;
    for (const CoverItem& item : paying) {
        if (covers_target(covered, paying_target)) break;
        double needed = paying_target - covered;
        taken.push_back(item.point);
        if (item.weight >= needed) {
            lower = cost_full + item.cost * (needed / item.weight);
            upper = cost_full + item.cost;
            fractional = true;
            break;
        }
        cost_full += item.cost;
        covered += item.weight;
    }
    if (!fractional) {
        // The prefix completed the target exactly (or the item list ran out,
        // which the total weight rules out beyond rounding dust).
        lower = upper = cost_full;
    }
    out.lower = lower;
    out.upper = upper;
    out.exact = false;
    out.witness = PointSet::of(std::move(taken));
    return out;
}

PointSet ExampleGraph::good_edge_neighborhood(const LabelAssignment& f, const PointSet& u) const {
    std::vector<PointIndex> out;
    for (PointIndex x : u)
        for (PointIndex y : neighbors_[x])
            if (f(y) == f(x)) out.push_back(y);
    return PointSet::of(std::move(out));
}

std::vector<std::pair<std::string, std::string>> load_edge_list(std::istream& in) {
    std::vector<std::pair<std::string, std::string>> edges;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 == line.size())
            throw InputError("edge file line " + std::to_string(line_no) +
                             ": expected two ids separated by a tab");
        edges.emplace_back(line.substr(0, tab), line.substr(tab + 1));
    }
    return edges;
}

std::vector<std::pair<std::string, std::string>> load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open edge file: " + path);
    return load_edge_list(in);
}

void write_edge_list(std::ostream& out, const Population& pop, const ExampleGraph& g) {
    for (PointIndex i = 0; i < g.num_points(); ++i)
        for (PointIndex j : g.neighbors(i))
            if (i < j) out << pop.point(i).id << '\t' << pop.point(j).id << "\n";
}

}  // namespace wsexp
