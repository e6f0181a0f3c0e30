#pragma once

// Artificial PU data: Gaussian features with logistic or Cauchy response,
// and the three labelling scenarios (constant, logistic, product-scaled
// propensity) applied to any dataset with a known class variable.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "pulearn/dataset.hpp"
#include "pulearn/glm.hpp"
#include "pulearn/rng.hpp"

namespace pulearn {

enum class Link { logistic, cauchy };

inline std::string link_name(Link link) { return link == Link::logistic ? "logistic" : "cauchy"; }

inline Link link_from_name(const std::string& s) {
    if (s == "logistic") return Link::logistic;
    if (s == "cauchy") return Link::cauchy;
    throw std::invalid_argument("unknown link: " + s);
}

// Response CDF used as success probability.
inline double link_cdf(Link link, double t) {
    if (link == Link::logistic) return sigmoid(t);
    return 0.5 + std::atan(t) / M_PI;  // standard Cauchy, location 0 scale 1
}

struct ArtifSpec {
    Eigen::Index n = 2000;
    Eigen::Index p = 50;
    Link link = Link::logistic;
    // Default generator: intercept 0, unit coefficients. This is the signal
    // strength that reproduces the published benchmark behaviour of the
    // artificial datasets.
    LinearParams beta_star;

    LinearParams effective_beta() const {
        if (beta_star.dim() == static_cast<Eigen::Index>(p)) return beta_star;
        if (beta_star.dim() != 0) throw std::invalid_argument("ArtifSpec: beta_star dimension mismatch");
        return {0.0, VectorXd::Ones(p)};
    }

    void validate() const {
        if (n < 1 || p < 1) throw std::invalid_argument("ArtifSpec: need n >= 1 and p >= 1");
        (void)effective_beta();
    }
};

// X rows iid N(0, I); Y ~ Bernoulli(F(x' beta*)).
inline Dataset gen_artif(const ArtifSpec& spec, std::uint64_t seed) {
    spec.validate();
    const LinearParams beta = spec.effective_beta();
    Rng rng(seed);
    MatrixXd X(spec.n, spec.p);
    for (Eigen::Index i = 0; i < spec.n; ++i)
        for (Eigen::Index j = 0; j < spec.p; ++j) X(i, j) = rng.normal();
    VectorXi Y(spec.n);
    for (Eigen::Index i = 0; i < spec.n; ++i) {
        const double prob = link_cdf(spec.link, linear_predictor(beta, X.row(i).transpose()));
        Y(i) = rng.bernoulli(prob) ? 1 : 0;
    }
    std::vector<std::string> names;
    names.reserve(spec.p);
    for (Eigen::Index j = 0; j < spec.p; ++j) names.push_back("x" + std::to_string(j + 1));
    Dataset ds{std::move(X), std::move(Y), std::move(names)};
    ds.validate();
    return ds;
}

enum class ScenarioKind { scar_constant, logistic_propensity, product_scaled };

inline std::string scenario_kind_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::scar_constant: return "scar_constant";
        case ScenarioKind::logistic_propensity: return "logistic_propensity";
        case ScenarioKind::product_scaled: return "product_scaled";
    }
    throw std::logic_error("unreachable");
}

inline ScenarioKind scenario_kind_from_name(const std::string& s) {
    if (s == "scar_constant") return ScenarioKind::scar_constant;
    if (s == "logistic_propensity") return ScenarioKind::logistic_propensity;
    if (s == "product_scaled") return ScenarioKind::product_scaled;
    throw std::invalid_argument("unknown scenario kind: " + s);
}

// Labelling mechanism descriptor. Only the fields of the active kind are
// meaningful: c for scenario 1, g for scenario 2, (k, p_minus, p_plus) for
// scenario 3.
struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::scar_constant;
    double c = 0.5;
    double g = 0.0;
    Eigen::Index k = 1;
    double p_minus = 0.2;
    double p_plus = 0.6;

    static ScenarioSpec scar(double c) {
        ScenarioSpec s;
        s.kind = ScenarioKind::scar_constant;
        s.c = c;
        return s;
    }
    static ScenarioSpec logistic(double g) {
        ScenarioSpec s;
        s.kind = ScenarioKind::logistic_propensity;
        s.g = g;
        return s;
    }
    static ScenarioSpec product(Eigen::Index k, double p_minus, double p_plus) {
        ScenarioSpec s;
        s.kind = ScenarioKind::product_scaled;
        s.k = k;
        s.p_minus = p_minus;
        s.p_plus = p_plus;
        return s;
    }

    // The swept parameter: c for scenario 1, g for scenario 2.
    double sweep_value() const {
        switch (kind) {
            case ScenarioKind::scar_constant: return c;
            case ScenarioKind::logistic_propensity: return g;
            case ScenarioKind::product_scaled: return std::nan("");  // fixed, no sweep axis
        }
        throw std::logic_error("unreachable");
    }

    ScenarioSpec with_sweep_value(double v) const {
        ScenarioSpec s = *this;
        switch (kind) {
            case ScenarioKind::scar_constant: s.c = v; break;
            case ScenarioKind::logistic_propensity: s.g = v; break;
            case ScenarioKind::product_scaled:
                throw std::invalid_argument("scenario 3 has no sweep parameter");
        }
        return s;
    }

    void validate(Eigen::Index p = -1) const {
        switch (kind) {
            case ScenarioKind::scar_constant:
                if (!(c > 0.0 && c <= 1.0)) throw std::invalid_argument("scenario 1: need c in (0,1]");
                break;
            case ScenarioKind::logistic_propensity:
                if (!std::isfinite(g)) throw std::invalid_argument("scenario 2: g must be finite");
                break;
            case ScenarioKind::product_scaled:
                if (k < 1) throw std::invalid_argument("scenario 3: need k >= 1");
                if (p >= 0 && k > p) throw std::invalid_argument("scenario 3: need k <= p");
                if (!(0.0 < p_minus && p_minus <= p_plus && p_plus <= 1.0))
                    throw std::invalid_argument("scenario 3: need 0 < p_minus <= p_plus <= 1");
                break;
        }
    }
};

using ColumnRanges = std::vector<std::pair<double, double>>;

inline ColumnRanges column_ranges(const Eigen::Ref<const MatrixXd>& X) {
    ColumnRanges ranges(static_cast<std::size_t>(X.cols()));
    for (Eigen::Index j = 0; j < X.cols(); ++j)
        ranges[static_cast<std::size_t>(j)] = {X.col(j).minCoeff(), X.col(j).maxCoeff()};
    return ranges;
}

// Propensity e(x) of one feature row under the given scenario.
//  1: constant c
//  2: sigma(x' gamma), gamma = p^{-1/2} (g, ..., g), no intercept
//  3: geometric mean over the first k coordinates of the linear rescale of
//     x(j) from [min_j, max_j] to [p_minus, p_plus]
inline double propensity_of(const Eigen::Ref<const VectorXd>& x, const ScenarioSpec& scenario,
                            const ColumnRanges& ranges = {}) {
    scenario.validate(x.size());
    switch (scenario.kind) {
        case ScenarioKind::scar_constant:
            return scenario.c;
        case ScenarioKind::logistic_propensity: {
            const double scale = scenario.g / std::sqrt(static_cast<double>(x.size()));
            return sigmoid(scale * x.sum());
        }
        case ScenarioKind::product_scaled: {
            if (static_cast<Eigen::Index>(ranges.size()) < scenario.k)
                throw std::invalid_argument("propensity_of: scenario 3 needs column ranges for x(1..k)");
            double log_prod = 0.0;
            for (Eigen::Index j = 0; j < scenario.k; ++j) {
                const auto [lo, hi] = ranges[static_cast<std::size_t>(j)];
                if (!(hi > lo)) throw std::invalid_argument("propensity_of: degenerate column range");
                const double sc =
                    scenario.p_minus + (x(j) - lo) / (hi - lo) * (scenario.p_plus - scenario.p_minus);
                log_prod += std::log(sc);
            }
            return std::exp(log_prod / static_cast<double>(scenario.k));
        }
    }
    throw std::logic_error("unreachable");
}

// Draw S: positives are labelled with probability e(x), negatives never.
// Scenario-3 ranges are computed over the full dataset, before any split.
inline PUDataset apply_labelling(const Dataset& ds, const ScenarioSpec& scenario, std::uint64_t seed) {
    ds.validate();
    scenario.validate(ds.p());
    const ColumnRanges ranges =
        scenario.kind == ScenarioKind::product_scaled ? column_ranges(ds.X) : ColumnRanges{};
    Rng rng(seed);
    VectorXi S(ds.n());
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        if (ds.Y(i) == 1) {
            const double e = propensity_of(ds.X.row(i).transpose(), scenario, ranges);
            S(i) = rng.bernoulli(e) ? 1 : 0;
        } else {
            S(i) = 0;
        }
    }
    PUDataset pu{ds.X, std::move(S), ds.Y};
    pu.validate();
    return pu;
}

}  // namespace pulearn
