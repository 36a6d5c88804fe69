#include "wsexp/testbeds.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "wsexp/robustness.hpp"

namespace wsexp {

namespace {

void check_distribution(const std::vector<double>& p, const char* what) {
    double sum = 0.0;
    for (double v : p) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw InputError(std::string(what) + ": negative or non-finite probability");
        sum += v;
    }
    if (std::abs(sum - 1.0) > kMassTolerance)
        throw InputError(std::string(what) + ": probabilities do not sum to 1");
}

}  // namespace

void CoTrainingSpec::validate() const {
    const int k = num_classes;
    if (k < 1) throw InputError("co-training spec: num_classes must be positive");
    if (static_cast<int>(class_priors.size()) != k)
        throw InputError("co-training spec: class_priors size mismatch");
    check_distribution(class_priors, "class priors");
    if (static_cast<int>(view1_given_class.size()) != k ||
        static_cast<int>(view2_given_class.size()) != k)
        throw InputError("co-training spec: per-class view distributions missing");
    const int v1 = view1_size(), v2 = view2_size();
    if (v1 < 1 || v2 < 1) throw InputError("co-training spec: empty view");
    for (int i = 0; i < k; ++i) {
        if (static_cast<int>(view1_given_class[i].size()) != v1 ||
            static_cast<int>(view2_given_class[i].size()) != v2)
            throw InputError("co-training spec: ragged view distributions");
        check_distribution(view1_given_class[i], "view-1 conditional");
        check_distribution(view2_given_class[i], "view-2 conditional");
    }
    if (static_cast<int>(teacher.size()) != v1)
        throw InputError("co-training spec: teacher must cover every view-1 value");
    for (int t : teacher)
        if (t < -1 || t >= k) throw InputError("co-training spec: teacher label out of range");
    // Gold labels live on view 2: each view-2 value may belong to one class only.
    for (int v = 0; v < v2; ++v) {
        int owners = 0;
        for (int i = 0; i < k; ++i)
            if (class_priors[i] * view2_given_class[i][v] > 0.0) ++owners;
        if (owners > 1)
            throw InputError("co-training spec: view-2 value " + std::to_string(v) +
                             " has positive mass under several classes");
    }
}

GeneratedInstance cotraining_population(const CoTrainingSpec& spec) {
    spec.validate();
    const int k = spec.num_classes, v1n = spec.view1_size(), v2n = spec.view2_size();

    std::vector<int> owner(v2n, -1);
    for (int v = 0; v < v2n; ++v)
        for (int i = 0; i < k; ++i)
            if (spec.class_priors[i] * spec.view2_given_class[i][v] > 0.0) owner[v] = i;

    GeneratedInstance out;
    std::vector<Point> points;
    std::vector<std::vector<std::string>> by_view2(v2n);
    double total = 0.0;
    for (int a = 0; a < v1n; ++a) {
        for (int b = 0; b < v2n; ++b) {
            if (owner[b] < 0) continue;
            int cls = owner[b];
            double mass = spec.class_priors[cls] * spec.view1_given_class[cls][a] *
                          spec.view2_given_class[cls][b];
            if (mass <= 0.0) continue;
            Point p;
            p.id = "p" + std::to_string(a) + "_" + std::to_string(b);
            p.mass = mass;
            p.gold = cls;
            if (spec.teacher[a] >= 0) p.weak = spec.teacher[a];
            total += mass;
            by_view2[b].push_back(p.id);
            out.view1_of_point.push_back(a);
            out.view2_of_point.push_back(b);
            points.push_back(std::move(p));
        }
    }
    if (points.empty()) throw InputError("co-training spec produces an empty population");
    for (Point& p : points) p.mass /= total;

    for (int b = 0; b < v2n; ++b)
        for (std::size_t i = 0; i < by_view2[b].size(); ++i)
            for (std::size_t j = i + 1; j < by_view2[b].size(); ++j)
                out.edges.emplace_back(by_view2[b][i], by_view2[b][j]);

    out.population = Population::from_points(std::move(points), k);
    Partition part = make_partition(out.population);
    for (int i = 0; i < k; ++i) out.realized_alpha.push_back(part.per_class[i].alpha);
    out.realized_coverage = out.population.mass_of(part.covered);
    return out;
}

CoTrainingSpec random_cotraining_spec(SplitRng& rng, int num_classes) {
    if (num_classes < 2) throw DomainError("random_cotraining_spec needs at least two classes");
    const int k = num_classes;
    CoTrainingSpec spec;
    spec.num_classes = k;

    // Teacher over view 1: every class label and the abstain symbol appear.
    const int v1n = static_cast<int>(rng.between(k + 1, k + 3));
    spec.teacher.resize(v1n);
    for (int i = 0; i < k; ++i) spec.teacher[i] = i;
    spec.teacher[k] = -1;
    for (int i = k + 1; i < v1n; ++i) spec.teacher[i] = static_cast<int>(rng.between(-1, k - 1));
    rng.shuffle(spec.teacher);

    spec.class_priors.resize(k);
    for (double& p : spec.class_priors) p = rng.uniform(0.3, 0.7);
    double prior_sum = 0.0;
    for (double p : spec.class_priors) prior_sum += p;
    for (double& p : spec.class_priors) p /= prior_sum;

    spec.view1_given_class.assign(k, std::vector<double>(v1n, 0.0));
    for (int i = 0; i < k; ++i) {
        const double alpha = rng.uniform(0.08, 0.42);
        const double coverage = rng.uniform(0.45, 0.85);
        double group_target[3] = {coverage * (1.0 - alpha),  // teacher correct
                                  coverage * alpha,          // teacher wrong
                                  1.0 - coverage};           // teacher abstains
        std::vector<double> w(v1n);
        double group_sum[3] = {0.0, 0.0, 0.0};
        auto group_of = [&](int a) {
            if (spec.teacher[a] == i) return 0;
            return spec.teacher[a] >= 0 ? 1 : 2;
        };
        for (int a = 0; a < v1n; ++a) {
            w[a] = rng.uniform(0.2, 1.0);
            group_sum[group_of(a)] += w[a];
        }
        for (int a = 0; a < v1n; ++a)
            spec.view1_given_class[i][a] = w[a] * group_target[group_of(a)] / group_sum[group_of(a)];
    }

    std::vector<int> block(k);
    int v2n = 0;
    for (int i = 0; i < k; ++i) {
        block[i] = static_cast<int>(rng.between(1, 3));
        v2n += block[i];
    }
    spec.view2_given_class.assign(k, std::vector<double>(v2n, 0.0));
    int offset = 0;
    for (int i = 0; i < k; ++i) {
        double sum = 0.0;
        for (int b = 0; b < block[i]; ++b) {
            spec.view2_given_class[i][offset + b] = rng.uniform(0.2, 1.0);
            sum += spec.view2_given_class[i][offset + b];
        }
        for (int b = 0; b < block[i]; ++b) spec.view2_given_class[i][offset + b] /= sum;
        offset += block[i];
    }
    return spec;
}

GeneratedInstance planted_population(const PlantedParams& params, std::uint64_t seed) {
    const int n = params.n_points, k = params.num_classes;
    if (k < 1 || n < k) throw InputError("planted population: need at least one point per class");
    if (static_cast<int>(params.alpha_targets.size()) != k)
        throw InputError("planted population: one alpha target per class required");
    for (double a : params.alpha_targets)
        if (!(a >= 0.0 && a < 0.5)) throw InputError("planted population: alpha target outside [0, 1/2)");
    if (!(params.coverage_target >= 0.0 && params.coverage_target <= 1.0))
        throw InputError("planted population: coverage target outside [0, 1]");
    if (!(params.edge_density >= 0.0 && params.edge_density <= 1.0))
        throw InputError("planted population: edge density outside [0, 1]");
    bool any_alpha = false;
    for (double a : params.alpha_targets) any_alpha = any_alpha || a > 0.0;
    if (params.coverage_target == 0.0 && any_alpha)
        throw InputError("planted population: infeasible targets, nonzero alpha with zero coverage");

    SplitRng root(seed);

    std::vector<int> cls(n);
    for (int i = 0; i < n; ++i) cls[i] = i % k;
    {
        SplitRng r = root.substream("classes");
        r.shuffle(cls);
    }

    std::vector<double> mass(n, 1.0 / n);
    if (!params.uniform_masses) {
        SplitRng r = root.substream("masses");
        double sum = 0.0;
        for (double& m : mass) {
            m = r.uniform(0.5, 1.5);
            sum += m;
        }
        for (double& m : mass) m /= sum;
    }

    std::vector<char> covered(n, 0);
    {
        SplitRng r = root.substream("coverage");
        for (int i = 0; i < n; ++i) covered[i] = r.coin(params.coverage_target) ? 1 : 0;
    }

    // Greedy mass-aware selection of incorrectly pseudolabeled points.
    std::vector<int> weak(n, -1);
    {
        SplitRng r = root.substream("weak");
        for (int c = 0; c < k; ++c) {
            std::vector<int> pool;
            double covered_mass = 0.0;
            for (int i = 0; i < n; ++i)
                if (cls[i] == c && covered[i]) {
                    pool.push_back(i);
                    covered_mass += mass[i];
                }
            r.shuffle(pool);
            double target = params.alpha_targets[c] * covered_mass;
            double bad_mass = 0.0;
            for (int i : pool) {
                bool take = (target - bad_mass) > mass[i] / 2.0;
                if (take) {
                    bad_mass += mass[i];
                    int wrong = (c + 1 + static_cast<int>(r.below(std::max(1, k - 1)))) % k;
                    if (k == 1) wrong = 0;  // degenerate: no wrong label exists
                    weak[i] = wrong;
                } else {
                    weak[i] = c;
                }
            }
        }
    }

    GeneratedInstance out;
    std::vector<Point> points(n);
    for (int i = 0; i < n; ++i) {
        points[i].id = "p" + std::to_string(i);
        points[i].mass = mass[i];
        points[i].gold = cls[i];
        if (covered[i]) points[i].weak = weak[i];
    }
    {
        SplitRng r = root.substream("edges");
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (cls[i] != cls[j] && !params.cross_class_edges) continue;
                if (r.coin(params.edge_density))
                    out.edges.emplace_back(points[i].id, points[j].id);
            }
    }

    out.population = Population::from_points(std::move(points), k);
    Partition part = make_partition(out.population);
    for (int c = 0; c < k; ++c) out.realized_alpha.push_back(part.per_class[c].alpha);
    out.realized_coverage = out.population.mass_of(part.covered);
    return out;
}

std::vector<LabelAssignment> enumerate_hypotheses(const HypothesisClassSpec& spec,
                                                  const Population& pop) {
    const std::size_t n = pop.size();
    const int k = pop.num_classes();
    std::vector<LabelAssignment> out;

    switch (spec.kind) {
        case HypothesisClassSpec::Kind::all_dichotomies: {
            if (k < 2) throw DomainError("all-dichotomies requires at least two classes");
            if (n > 16) throw DomainError("all-dichotomies is limited to 16 points");
            std::size_t count = std::size_t{1} << n;
            if (count > kHypothesisCap) throw DomainError("hypothesis enumeration bound exceeded");
            out.reserve(count);
            for (std::size_t mask = 0; mask < count; ++mask) {
                std::vector<int> labels(n);
                for (std::size_t i = 0; i < n; ++i) labels[i] = (mask >> i) & 1u;
                out.emplace_back(std::move(labels));
            }
            return out;
        }
        case HypothesisClassSpec::Kind::thresholds_1d: {
            if (k < 2) throw DomainError("thresholds require at least two classes");
            if (spec.feature_order.size() != n)
                throw DomainError("thresholds: feature order must list every point once");
            std::vector<char> seen(n, 0);
            for (PointIndex i : spec.feature_order) {
                if (i >= n || seen[i]) throw DomainError("thresholds: feature order is not a permutation");
                seen[i] = 1;
            }
            std::size_t count = (n + 1) * (spec.include_flipped ? 2 : 1);
            if (count > kHypothesisCap) throw DomainError("hypothesis enumeration bound exceeded");
            for (std::size_t t = 0; t <= n; ++t) {
                std::vector<int> labels(n);
                for (std::size_t pos = 0; pos < n; ++pos)
                    labels[spec.feature_order[pos]] = pos >= t ? 1 : 0;
                out.emplace_back(labels);
                if (spec.include_flipped) {
                    for (int& v : labels) v = 1 - v;
                    out.emplace_back(std::move(labels));
                }
            }
            return out;
        }
        case HypothesisClassSpec::Kind::view2_measurable: {
            if (spec.num_groups < 1 || spec.group_of_point.size() != n)
                throw DomainError("view2-measurable: group assignment missing");
            for (int gid : spec.group_of_point)
                if (gid < 0 || gid >= spec.num_groups)
                    throw DomainError("view2-measurable: group id out of range");
            double log_count = spec.num_groups * std::log2(static_cast<double>(k));
            if (log_count > 20.0) throw DomainError("hypothesis enumeration bound exceeded");
            std::vector<int> assign(spec.num_groups, 0);
            while (true) {
                std::vector<int> labels(n);
                for (std::size_t i = 0; i < n; ++i) labels[i] = assign[spec.group_of_point[i]];
                out.emplace_back(std::move(labels));
                int pos = 0;
                while (pos < spec.num_groups && ++assign[pos] == k) assign[pos++] = 0;
                if (pos == spec.num_groups) break;
            }
            return out;
        }
        case HypothesisClassSpec::Kind::explicit_list: {
            if (spec.explicit_hypotheses.size() > kHypothesisCap)
                throw DomainError("hypothesis enumeration bound exceeded");
            for (const LabelAssignment& f : spec.explicit_hypotheses) {
                if (f.size() != n) throw DomainError("explicit hypothesis with wrong size");
                for (std::size_t i = 0; i < n; ++i)
                    if (f(static_cast<PointIndex>(i)) < 0 || f(static_cast<PointIndex>(i)) >= k)
                        throw DomainError("explicit hypothesis with out-of-range label");
            }
            return spec.explicit_hypotheses;
        }
    }
    throw DomainError("unknown hypothesis class kind");
}

ErmResult erm_train(const Population& pop,
                    const std::vector<std::pair<PointIndex, int>>& sample,
                    const std::vector<LabelAssignment>& hypotheses) {
    if (sample.empty()) throw DomainError("erm_train: empty sample");
    if (hypotheses.empty()) throw DomainError("erm_train: empty hypothesis list");
    ErmResult best{0, 0.0};
    bool first = true;
    for (std::size_t h = 0; h < hypotheses.size(); ++h) {
        double err = 0.0;
        for (const auto& [idx, label] : sample)
            if (hypotheses[h](idx) != label) err += pop.mass(idx);
        if (first || err < best.weighted_error) {
            best = {h, err};
            first = false;
        }
    }
    return best;
}

void VerificationReport::merge(const VerificationReport& other) {
    classes_evaluated += other.classes_evaluated;
    instances += other.instances;
    applicable += other.applicable;
    vacuous += other.vacuous;
    violations_total += other.violations_total;
    for (const Violation& v : other.violations)
        if (violations.size() < 200) violations.push_back(v);
    if (other.applicable > 0) {
        if (applicable == other.applicable) {
            max_slack = other.max_slack;
            min_slack = other.min_slack;
        } else {
            max_slack = std::max(max_slack, other.max_slack);
            min_slack = std::min(min_slack, other.min_slack);
        }
    }
}

namespace {

struct ClassMasses {
    double err_weak = 0.0;
    double nonrobust_covered = 0.0;
    double nonrobust_uncovered = 0.0;
    double gate_joint = 0.0;  // P(f != weak or f not robust | S_i)
    double true_err_covered = 0.0;
    double true_err_uncovered = 0.0;  // only meaningful when P(T_i) > 0
};

ClassMasses class_masses(const Population& pop, const LabelAssignment& f, const PointSet& robust,
                         const ClassPartition& cp) {
    ClassMasses m;
    const double s_mass = pop.mass_of(cp.covered);
    for (PointIndex x : cp.covered) {
        const Point& p = pop.point(x);
        bool wrong_weak = f(x) != *p.weak;
        bool nonrobust = !robust.contains(x);
        if (wrong_weak) m.err_weak += p.mass;
        if (nonrobust) m.nonrobust_covered += p.mass;
        if (wrong_weak || nonrobust) m.gate_joint += p.mass;
        if (f(x) != p.gold) m.true_err_covered += p.mass;
    }
    m.err_weak /= s_mass;
    m.nonrobust_covered /= s_mass;
    m.gate_joint /= s_mass;
    m.true_err_covered /= s_mass;

    const double t_mass = pop.mass_of(cp.uncovered);
    if (t_mass > 0.0) {
        for (PointIndex x : cp.uncovered) {
            const Point& p = pop.point(x);
            if (!robust.contains(x)) m.nonrobust_uncovered += p.mass;
            if (f(x) != p.gold) m.true_err_uncovered += p.mass;
        }
        m.nonrobust_uncovered /= t_mass;
        m.true_err_uncovered /= t_mass;
    }
    return m;
}

SetFamily family_from_robust_sets(const Population& pop, const PointSet& base,
                                  const std::vector<LabelAssignment>& fs,
                                  const std::vector<PointSet>& robust, FamilyKind kind) {
    SetFamily fam;
    fam.base = base;
    std::set<PointSet> seen;
    for (std::size_t h = 0; h < fs.size(); ++h) {
        std::vector<PointIndex> items;
        for (PointIndex x : base) {
            bool mistake = fs[h](x) != pop.point(x).gold;
            if ((kind == FamilyKind::mistakes) == mistake && robust[h].contains(x))
                items.push_back(x);
        }
        PointSet u = PointSet::of(std::move(items));
        if (seen.insert(u).second) fam.members.push_back(std::move(u));
    }
    return fam;
}

}  // namespace

VerificationReport verify_theorem(const Population& pop, const ExampleGraph& g,
                                  const std::vector<LabelAssignment>& hypotheses,
                                  Theorem theorem, const VerifyConfig& cfg) {
    if (theorem != Theorem::plc_main && theorem != Theorem::coverage_main &&
        theorem != Theorem::coverage_weak && theorem != Theorem::wei_plc)
        throw DomainError("verify_theorem supports plc-main, coverage-main, coverage-weak, wei-plc");
    if (hypotheses.empty()) throw DomainError("verify_theorem: empty hypothesis list");

    VerificationReport report;
    report.theorem = theorem;
    Partition part = make_partition(pop);

    std::vector<PointSet> robust;
    robust.reserve(hypotheses.size());
    for (const LabelAssignment& f : hypotheses) robust.push_back(robust_set(g, pop, f, cfg.eta));

    const bool needs_uncovered =
        theorem == Theorem::coverage_main || theorem == Theorem::coverage_weak;
    const double shrink = 1.0 - cfg.c_shrink;
    bool have_slack = false;

    for (int c : eligible_classes(pop, part)) {
        const ClassPartition& cp = part.per_class[c];
        if (needs_uncovered && pop.mass_of(cp.uncovered) <= 0.0) continue;
        ++report.classes_evaluated;
        const double alpha = *cp.alpha;

        // Measured expansion of the theorem's family on its set pair(s).
        std::optional<double> c1, c2;
        switch (theorem) {
            case Theorem::plc_main: {
                SetFamily fam = family_from_robust_sets(pop, cp.covered_good, hypotheses, robust,
                                                        FamilyKind::non_mistakes);
                ExpansionEstimate est =
                    exact_expansion(g, pop, fam, cp.covered_bad, cp.covered_good, cfg.q, cfg.eta);
                if (est.has_qualifying) c1 = est.c * shrink;
                break;
            }
            case Theorem::coverage_main: {
                SetFamily mistakes = family_from_robust_sets(pop, cp.uncovered, hypotheses, robust,
                                                             FamilyKind::mistakes);
                SetFamily keeps = family_from_robust_sets(pop, cp.uncovered, hypotheses, robust,
                                                          FamilyKind::non_mistakes);
                ExpansionEstimate good_side =
                    exact_expansion(g, pop, mistakes, cp.covered_good, cp.uncovered, cfg.q, cfg.eta);
                ExpansionEstimate bad_side =
                    exact_expansion(g, pop, keeps, cp.covered_bad, cp.uncovered, cfg.q, cfg.eta);
                if (good_side.has_qualifying) c1 = good_side.c * shrink;
                if (bad_side.has_qualifying) c2 = bad_side.c * shrink;
                break;
            }
            case Theorem::coverage_weak: {
                SetFamily mistakes = family_from_robust_sets(pop, cp.uncovered, hypotheses, robust,
                                                             FamilyKind::mistakes);
                ExpansionEstimate est =
                    exact_expansion(g, pop, mistakes, cp.covered_good, cp.uncovered, cfg.q, cfg.eta);
                if (est.has_qualifying) c1 = est.c * shrink;
                break;
            }
            case Theorem::wei_plc: {
                SetFamily fam = family_from_robust_sets(pop, cp.covered_bad, hypotheses, robust,
                                                        FamilyKind::mistakes);
                ExpansionEstimate est =
                    exact_expansion(g, pop, fam, cp.covered_good, cp.covered_bad, cfg.q, cfg.eta);
                if (est.has_qualifying) c1 = est.c * shrink;
                break;
            }
            default: break;
        }

        const bool expansion_ready =
            theorem == Theorem::coverage_main ? (c1 && c2) : c1.has_value();
        if (!expansion_ready) {
            // Vacuous expansion: no family member clears the q threshold, so
            // the theorems restrict nothing on this class.
            report.instances += hypotheses.size();
            report.vacuous += hypotheses.size();
            continue;
        }

        for (std::size_t h = 0; h < hypotheses.size(); ++h) {
            ++report.instances;
            ClassMasses m = class_masses(pop, hypotheses[h], robust[h], cp);

            BoundReport br;
            double true_err = 0.0;
            switch (theorem) {
                case Theorem::plc_main:
                    br = plc_bound(*c1, cfg.q, alpha, m.err_weak, m.nonrobust_covered,
                                   PlcGate::main, m.gate_joint);
                    true_err = m.true_err_covered;
                    break;
                case Theorem::coverage_main:
                    br = coverage_bound(*c1, *c2, cfg.q, alpha, m.err_weak, m.nonrobust_uncovered);
                    true_err = m.true_err_uncovered;
                    break;
                case Theorem::coverage_weak:
                    br = coverage_bound_weak(*c1, cfg.q, alpha, m.err_weak, m.nonrobust_uncovered);
                    true_err = m.true_err_uncovered;
                    break;
                case Theorem::wei_plc:
                    br = wei_plc_bound(*c1, cfg.q, alpha, m.err_weak, m.nonrobust_covered,
                                       m.gate_joint);
                    true_err = m.true_err_covered;
                    break;
                default: break;
            }

            if (!br.applicable) {
                ++report.vacuous;
                continue;
            }
            ++report.applicable;
            double bound = *br.raw_value - cfg.mutation;
            double slack = bound - true_err;
            if (!have_slack) {
                report.max_slack = report.min_slack = slack;
                have_slack = true;
            } else {
                report.max_slack = std::max(report.max_slack, slack);
                report.min_slack = std::min(report.min_slack, slack);
            }
            if (true_err > bound + cfg.tolerance) {
                ++report.violations_total;
                if (report.violations.size() < 200)
                    report.violations.push_back({c, h, bound, true_err, *c1, c2.value_or(0.0),
                                                 alpha, m.err_weak});
            }
        }
    }
    return report;
}

VerificationReport run_theorem_suite(Theorem theorem, const SuiteConfig& cfg) {
    VerificationReport total;
    total.theorem = theorem;
    SplitRng root(cfg.seed);
    SplitRng stream = root.substream(theorem_name(theorem));

    // Cycle robustness budgets and expansion thresholds across instances.
    const double etas[] = {0.0, 0.0, 0.1, 0.2, 0.3};
    const double qs[] = {0.0, 0.15, 0.0, 0.1, 0.25};

    for (std::size_t i = 0; i < cfg.instances; ++i) {
        SplitRng inst = stream.substream(i);
        const bool large = cfg.large_every > 0 && (i + 1) % cfg.large_every == 0;

        for (int attempt = 0; attempt < 64; ++attempt) {
            SplitRng gen = inst.substream("gen").substream(static_cast<std::uint64_t>(attempt));
            PlantedParams params;
            params.n_points = static_cast<int>(large ? gen.between(13, 16)
                                                     : gen.between(cfg.min_points, cfg.max_points));
            params.num_classes = 2;
            params.alpha_targets = {gen.uniform(0.1, 0.4), gen.uniform(0.1, 0.4)};
            params.coverage_target = gen.uniform(0.5, 0.85);
            params.edge_density = gen.uniform(0.25, 0.7);
            params.cross_class_edges = gen.coin(0.2);
            params.uniform_masses = gen.coin(0.5);

            GeneratedInstance instance = planted_population(params, gen.next());
            ExampleGraph graph = ExampleGraph::build_from_ids(instance.population, instance.edges);

            std::vector<LabelAssignment> hypotheses;
            if (large) {
                HypothesisClassSpec spec;
                spec.kind = HypothesisClassSpec::Kind::explicit_list;
                SplitRng hyp_rng = gen.substream("hyps");
                for (std::size_t hcount = 0; hcount < cfg.large_hypotheses; ++hcount) {
                    std::vector<int> labels(instance.population.size());
                    for (int& v : labels) v = static_cast<int>(hyp_rng.below(2));
                    spec.explicit_hypotheses.emplace_back(std::move(labels));
                }
                hypotheses = enumerate_hypotheses(spec, instance.population);
            } else {
                HypothesisClassSpec spec;
                spec.kind = HypothesisClassSpec::Kind::all_dichotomies;
                hypotheses = enumerate_hypotheses(spec, instance.population);
            }

            VerifyConfig vc;
            vc.eta = etas[i % 5];
            vc.q = qs[i % 5];
            vc.mutation = cfg.mutation;
            VerificationReport rep =
                verify_theorem(instance.population, graph, hypotheses, theorem, vc);
            if (rep.classes_evaluated == 0) continue;  // degenerate draw, regenerate
            total.merge(rep);
            break;
        }
    }
    return total;
}

}  // namespace wsexp
