#include "wsexp/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "wsexp/robustness.hpp"
#include "wsexp/rng.hpp"

namespace wsexp {

PointSet robust_outcome_set(const Population& pop, const ExampleGraph& g, const PointSet& base,
                            const LabelAssignment& f, double eta, FamilyKind kind) {
    PointSet robust = robust_set(g, pop, f, eta);
    std::vector<PointIndex> out;
    for (PointIndex x : base) {
        bool mistake = f(x) != pop.point(x).gold;
        if ((kind == FamilyKind::mistakes) == mistake && robust.contains(x)) out.push_back(x);
    }
    return PointSet::of(std::move(out));
}

SetFamily mistake_family(const Population& pop, const ExampleGraph& g, const PointSet& base,
                         const std::vector<LabelAssignment>& classifiers, double eta,
                         FamilyKind kind, const std::string& name) {
    SetFamily fam;
    fam.name = name.empty()
                   ? (kind == FamilyKind::mistakes ? "robust-mistakes" : "robust-non-mistakes")
                   : name;
    fam.base = base;
    std::set<PointSet> seen;
    for (const LabelAssignment& f : classifiers) {
        PointSet u = robust_outcome_set(pop, g, base, f, eta, kind);
        if (seen.insert(u).second) fam.members.push_back(std::move(u));
    }
    return fam;
}

ExpansionEstimate exact_expansion(const ExampleGraph& g, const Population& pop,
                                  const SetFamily& family, const PointSet& a, const PointSet& b,
                                  double q, double eta, const RobustSizeOptions& opts) {
    if (pop.mass_of(a) <= 0.0) throw DomainError("exact_expansion: P(A) = 0");
    const double b_mass = pop.mass_of(b);
    if (b_mass <= 0.0) throw DomainError("exact_expansion: P(B) = 0");
    if (!(q >= 0.0)) throw DomainError("exact_expansion: q must be nonnegative");

    ExpansionEstimate est;
    est.mode = eta > 0.0 ? ExpansionMode::robust_bracket : ExpansionMode::exact;
    est.q = q;
    est.eta = eta;

    bool all_exact = true;
    double best_lo = 0.0, best_hi = 0.0;
    for (const PointSet& u : family.members) {
        double u_frac = pop.mass_of(u.set_intersection(b)) / b_mass;
        if (!(u_frac > q)) continue;

        double lo, hi;
        if (eta == 0.0) {
            lo = hi = conditional_prob(pop, g.neighborhood(u), a);
        } else {
            RobustSizeBracket bracket = g.robust_neighborhood_size(pop, u, a, eta, opts);
            lo = bracket.lower;
            hi = bracket.upper;
            all_exact = all_exact && bracket.exact;
        }
        double lo_ratio = lo / u_frac, hi_ratio = hi / u_frac;
        if (!est.has_qualifying || lo_ratio < best_lo) {
            best_lo = lo_ratio;
            est.witness = u;
        }
        if (!est.has_qualifying || hi_ratio < best_hi) best_hi = hi_ratio;
        est.has_qualifying = true;
    }
    if (!est.has_qualifying) return est;

    est.lo = best_lo;
    est.hi = best_hi;
    est.c = best_lo;
    if (eta > 0.0 && all_exact) {
        est.mode = ExpansionMode::exact;
    }
    return est;
}

void OracleSample::validate_against(const ExampleGraph& g) const {
    if (oracle_of_a.size() != sample_a.size())
        throw InputError("oracle sample: every A-sample point needs an oracle target");
    for (std::size_t i = 0; i < sample_a.size(); ++i) {
        const auto& nb = g.neighbors(sample_a[i]);
        if (!std::binary_search(nb.begin(), nb.end(), oracle_of_a[i]))
            throw InputError("oracle target is not a declared neighbor of its source");
    }
}

EmpiricalRatio empirical_expansion(const OracleSample& sample, const PointSet& u, double q,
                                   double epsilon) {
    if (sample.sample_a.empty() || sample.sample_b.empty())
        throw DomainError("empirical_expansion: empty sample");
    if (sample.oracle_of_a.size() != sample.sample_a.size())
        throw DomainError("empirical_expansion: oracle map does not cover the A sample");

    std::size_t hits_a = 0;
    for (PointIndex t : sample.oracle_of_a)
        if (u.contains(t)) ++hits_a;
    std::size_t hits_b = 0;
    for (PointIndex x : sample.sample_b)
        if (u.contains(x)) ++hits_b;

    EmpiricalRatio out;
    out.numer_frac = static_cast<double>(hits_a) / static_cast<double>(sample.sample_a.size());
    out.denom_frac = static_cast<double>(hits_b) / static_cast<double>(sample.sample_b.size());

    if (out.denom_frac < q - epsilon) {
        out.below_threshold = true;
        return out;
    }
    if (hits_b == 0) {
        if (hits_a != 0)
            throw DomainError("empirical_expansion: zero denominator with nonzero numerator");
        out.below_threshold = true;  // 0/0 carries no ratio information
        return out;
    }
    out.value = out.numer_frac / out.denom_frac;
    return out;
}

double default_epsilon(std::size_t n_b, double delta) {
    if (n_b == 0) throw DomainError("default_epsilon: n_b must be positive");
    if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("default_epsilon: delta outside (0, 1]");
    return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n_b)));
}

HeuristicResult heuristic_min_expansion(const Population& pop, const ExampleGraph& g,
                                        const std::vector<PointIndex>& train_pool,
                                        const Learner& learner, const OracleSample& oracle,
                                        FamilyKind kind, const PointSet& b,
                                        const HeuristicConfig& cfg) {
    if (cfg.resamples < 1) throw DomainError("heuristic_min_expansion: resamples must be >= 1");
    if (!(cfg.resample_fraction > 0.0 && cfg.resample_fraction <= 1.0))
        throw DomainError("heuristic_min_expansion: resample_fraction outside (0, 1]");
    if (train_pool.empty()) throw DomainError("heuristic_min_expansion: empty training pool");

    const double epsilon = cfg.epsilon.value_or(default_epsilon(oracle.sample_b.size()));
    const std::size_t draw_size = std::max<std::size_t>(
        1, static_cast<std::size_t>(
               std::llround(cfg.resample_fraction * static_cast<double>(train_pool.size()))));

    HeuristicResult result;
    result.stochastic_learner_caveat = cfg.learner_stochastic;
    SplitRng root(cfg.seed);
    SplitRng draws_rng = root.substream("heuristic-draw");

    for (int d = 0; d < cfg.resamples; ++d) {
        SplitRng rng = draws_rng.substream(static_cast<std::uint64_t>(d));
        std::vector<std::pair<PointIndex, int>> sample;
        sample.reserve(draw_size);
        for (std::size_t pos : rng.sample_without_replacement(train_pool.size(), draw_size)) {
            PointIndex idx = train_pool[pos];
            const Point& p = pop.point(idx);
            if (!p.weak)
                throw DomainError("heuristic_min_expansion: abstaining point " + p.id +
                                  " in training pool");
            sample.emplace_back(idx, *p.weak);
        }

        LabelAssignment f;
        try {
            f = learner(sample);
        } catch (const std::exception& e) {
            throw DomainError("learner failed on draw " + std::to_string(d) + ": " + e.what());
        }
        if (f.size() != pop.size())
            throw DomainError("learner returned a partial labeling on draw " + std::to_string(d));

        PointSet u = robust_outcome_set(pop, g, b, f, cfg.eta, kind);
        EmpiricalRatio ratio = empirical_expansion(oracle, u, cfg.q, epsilon);

        HeuristicDraw trace;
        trace.draw = d;
        trace.qualifying = !ratio.below_threshold;
        trace.c_hat = ratio.value;
        trace.denom_frac = ratio.denom_frac;
        trace.witness_size = u.size();
        result.trace.push_back(trace);

        if (!ratio.below_threshold && (!result.has_qualifying || ratio.value < result.c_min)) {
            result.has_qualifying = true;
            result.c_min = ratio.value;
            result.best_draw = d;
            result.witness = std::move(u);
        }
    }
    return result;
}

double generalization_margin(int vc, std::size_t n_a, std::size_t n_b, double q_bar,
                             double delta) {
    if (vc < 1) throw DomainError("generalization_margin: vc must be >= 1");
    if (n_a == 0 || n_b == 0) throw DomainError("generalization_margin: sample sizes must be positive");
    if (!(q_bar > 0.0)) throw DomainError("generalization_margin: q_bar must be positive");
    if (!(delta > 0.0 && delta <= 1.0))
        throw DomainError("generalization_margin: delta outside (0, 1]");

    const double na = static_cast<double>(n_a);
    const double nb = static_cast<double>(n_b);
    const double gamma = nb * q_bar / na;
    const double m = na + nb;
    const double d = static_cast<double>(vc);
    const double complexity = d * std::log(2.0 * std::exp(1.0) * m / d) + std::log(8.0 / delta);
    return 4.0 * (4.0 + std::sqrt(gamma)) * std::sqrt(complexity / (na * q_bar * q_bar));
}

int vc_of_mistake_family(int vc_of_hypotheses, int num_classes) {
    if (num_classes != 2)
        throw DomainError("vc_of_mistake_family is only stated for binary classification");
    if (vc_of_hypotheses < 1) throw DomainError("vc_of_mistake_family: vc must be >= 1");
    return vc_of_hypotheses;
}

namespace {

std::vector<PointIndex> read_id_lines(const Population& pop, std::istream& in,
                                      const char* what) {
    std::vector<PointIndex> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        try {
            out.push_back(pop.index_of(line));
        } catch (const InputError&) {
            throw InputError(std::string(what) + " line " + std::to_string(line_no) +
                             ": unknown id " + line);
        }
    }
    return out;
}

}  // namespace

OracleSample load_oracle_sample(const Population& pop, std::istream& pairs,
                                std::istream& sample_a, std::istream& sample_b) {
    std::unordered_map<PointIndex, PointIndex> oracle;
    std::string line;
    int line_no = 0;
    while (std::getline(pairs, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw InputError("oracle pairs line " + std::to_string(line_no) +
                             ": expected source<TAB>target");
        PointIndex src = pop.index_of(line.substr(0, tab));
        PointIndex tgt = pop.index_of(line.substr(tab + 1));
        if (!oracle.emplace(src, tgt).second)
            throw InputError("oracle pairs line " + std::to_string(line_no) +
                             ": duplicate source id");
        }

    OracleSample out;
    out.sample_a = read_id_lines(pop, sample_a, "sample A");
    out.sample_b = read_id_lines(pop, sample_b, "sample B");
    out.oracle_of_a.reserve(out.sample_a.size());
    for (PointIndex x : out.sample_a) {
        auto it = oracle.find(x);
        if (it == oracle.end())
            throw InputError("sample A point " + pop.point(x).id + " has no oracle pair");
        out.oracle_of_a.push_back(it->second);
    }
    return out;
}

OracleSample load_oracle_sample_files(const Population& pop, const std::string& pairs_path,
                                      const std::string& sample_a_path,
                                      const std::string& sample_b_path) {
    std::ifstream pairs(pairs_path), sa(sample_a_path), sb(sample_b_path);
    if (!pairs) throw InputError("cannot open oracle pairs file: " + pairs_path);
    if (!sa) throw InputError("cannot open sample file: " + sample_a_path);
    if (!sb) throw InputError("cannot open sample file: " + sample_b_path);
    return load_oracle_sample(pop, pairs, sa, sb);
}

}  // namespace wsexp
