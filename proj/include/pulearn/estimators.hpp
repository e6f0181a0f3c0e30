#pragma once

// PU estimators: NAIVE, ORACLE, JOINT, TM, TM SIMPLE, EM and LBE, plus the
// shared probability algebra (odds ratio, posterior weights, naive
// propensity, approximate positive stratum).

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pulearn/dataset.hpp"
#include "pulearn/glm.hpp"

namespace pulearn {

enum class Method { naive, tm, tm_simple, joint, em, lbe, oracle };

inline std::string method_name(Method m) {
    switch (m) {
        case Method::naive: return "naive";
        case Method::tm: return "tm";
        case Method::tm_simple: return "tm_simple";
        case Method::joint: return "joint";
        case Method::em: return "em";
        case Method::lbe: return "lbe";
        case Method::oracle: return "oracle";
    }
    throw std::logic_error("unreachable");
}

inline Method method_from_name(const std::string& s) {
    for (Method m : {Method::naive, Method::tm, Method::tm_simple, Method::joint, Method::em,
                     Method::lbe, Method::oracle})
        if (method_name(m) == s) return m;
    throw std::invalid_argument("unknown method: " + s);
}

// Fitted posterior model, with the propensity model where the method
// estimates one (JOINT, TM, EM, LBE).
struct FittedPUModel {
    LinearParams posterior;
    std::optional<LinearParams> propensity;
    Method method = Method::naive;
    FitDiagnostics diagnostics;
    int outer_iterations = 1;
};

struct FitConfig {
    SolverConfig solver{};  // inner (per-block) solves
    SolverConfig outer{};   // outer-loop stopping rule
};

struct TMConfig {
    enum class AlphaRule { fraction_labelled, fixed };
    AlphaRule alpha_rule = AlphaRule::fraction_labelled;
    double alpha = 0.5;  // only used with AlphaRule::fixed
    bool strict_threshold = true;
    SolverConfig solver{};
    SolverConfig outer{};

    void validate() const {
        if (alpha_rule == AlphaRule::fixed && !(alpha > 0.0 && alpha < 1.0))
            throw std::invalid_argument("TMConfig: fixed alpha must lie in (0,1)");
    }
};

// e_naive(x) = (s_naive(x) + 1) / 2, the midpoint of [s_naive(x), 1].
inline double naive_propensity(double s_hat) {
    if (!(s_hat >= 0.0 && s_hat <= 1.0))
        throw std::invalid_argument("naive_propensity: input outside [0,1]");
    return 0.5 * (s_hat + 1.0);
}

// OR(x) = [(1-e)/e] / [(1-s)/s], the model-implied P(Y=1 | S=0, x).
// Estimated e and s come from different models, so the inputs are clipped
// first and the result is clipped to a probability.
inline double odds_ratio(double e_hat, double s_hat) {
    const double e = std::clamp(e_hat, 1e-6, 1.0);
    const double s = std::clamp(s_hat, 1e-6, 1.0 - 1e-6);
    const double r = ((1.0 - e) / e) * (s / (1.0 - s));
    return std::clamp(r, 0.0, 1.0);
}

// Per-observation class weights (w1, w0): a labelled row counts as one
// positive; an unlabelled row splits into a positive share P(Y=1|S=0,x)
// and the complementary negative share.
inline std::pair<double, double> posterior_weights(int s_i, double or_i) {
    if (s_i != 0 && s_i != 1) throw std::invalid_argument("posterior_weights: S must be 0/1");
    if (!(or_i >= 0.0 && or_i <= 1.0))
        throw std::invalid_argument("posterior_weights: odds ratio outside [0,1]");
    if (s_i == 1) return {1.0, 0.0};
    return {or_i, 1.0 - or_i};
}

namespace detail {

// log(1 - sigma(a) sigma(b)) via the exact identity
//   1 - sigma(a) sigma(b) = (e^-a + e^-b + e^-a-b) sigma(a) sigma(b),
// evaluated in log space.
inline double log1m_sigmoid_product(double a, double b) {
    const double x1 = -a, x2 = -b, x3 = -a - b;
    const double m = std::max({x1, x2, x3});
    const double lse = m + std::log(std::exp(x1 - m) + std::exp(x2 - m) + std::exp(x3 - m));
    return lse + log_sigmoid(a) + log_sigmoid(b);
}

// 1 - o * sigma(eta) without cancellation, floored away from zero so logs
// stay finite even for astronomically confident predictions.
inline double one_minus_prob_product(double eta, double o) {
    const double v = sigmoid(-eta) + sigmoid(eta) * (1.0 - o);
    return std::max(v, 1e-300);
}

inline double log1m_prob_product(double eta, double o) {
    if (eta <= 0.0) return std::log1p(-o * sigmoid(eta));
    return std::log(one_minus_prob_product(eta, o));
}

}  // namespace detail

// Mean observed-data log-likelihood of the product model
// s(x) = sigma(beta~ x) sigma(gamma~ x).
inline double pu_log_likelihood(const LinearParams& beta, const LinearParams& gamma, const PUDataset& pu) {
    const VectorXd a = linear_predictors(beta, pu.X);
    const VectorXd b = linear_predictors(gamma, pu.X);
    double total = 0.0;
    for (Eigen::Index i = 0; i < pu.n(); ++i) {
        if (pu.S(i) == 1)
            total += log_sigmoid(a(i)) + log_sigmoid(b(i));
        else
            total += detail::log1m_sigmoid_product(a(i), b(i));
    }
    return total / static_cast<double>(pu.n());
}

// Weighted posterior log-likelihood evaluated directly from the per-row
// weights (w1, w0) = posterior_weights(S_i, or_i).
inline double weighted_posterior_loglik(const LinearParams& beta, const PUDataset& pu,
                                        const Eigen::Ref<const VectorXd>& or_values) {
    if (or_values.size() != pu.n())
        throw std::invalid_argument("weighted_posterior_loglik: odds-ratio length mismatch");
    const VectorXd eta = linear_predictors(beta, pu.X);
    double total = 0.0;
    for (Eigen::Index i = 0; i < pu.n(); ++i) {
        const auto [w1, w0] = posterior_weights(pu.S(i), or_values(i));
        total += w1 * log_sigmoid(eta(i)) + w0 * log_sigmoid(-eta(i));
    }
    return total / static_cast<double>(pu.n());
}

// Posterior P(Y_i = 1 | S_i, X_i) under (beta~, gamma~): 1 on labelled rows,
// y(1-e) / (1-ye) on unlabelled ones.
inline VectorXd lbe_e_step(const LinearParams& beta, const LinearParams& gamma, const PUDataset& pu) {
    const VectorXd a = linear_predictors(beta, pu.X);
    const VectorXd b = linear_predictors(gamma, pu.X);
    VectorXd post(pu.n());
    for (Eigen::Index i = 0; i < pu.n(); ++i) {
        if (pu.S(i) == 1) {
            post(i) = 1.0;
        } else {
            const double num = sigmoid(a(i)) * sigmoid(-b(i));
            const double den = sigmoid(-a(i)) + num;  // = 1 - y e, exactly
            post(i) = den > 0.0 ? num / den : 0.0;
        }
    }
    return post;
}

// Lower empirical quantile of order alpha: the order statistic at index
// ceil(alpha * m), so alpha -> 0 selects the minimum.
inline double label_quantile_threshold(std::vector<double> values, double alpha) {
    if (values.empty()) throw std::invalid_argument("label_quantile_threshold: empty input");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("label_quantile_threshold: alpha must lie in (0,1)");
    std::sort(values.begin(), values.end());
    const auto m = static_cast<std::size_t>(values.size());
    auto idx = static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(m)));
    idx = std::clamp<std::size_t>(idx, 1, m);
    return values[idx - 1];
}

// Approximate positive stratum: rows that are labelled or score above the
// threshold (strict comparison by default).
inline std::vector<Eigen::Index> positive_stratum(const VectorXi& S,
                                                  const Eigen::Ref<const VectorXd>& y_hat,
                                                  double t, bool strict = true) {
    if (S.size() != y_hat.size()) throw std::invalid_argument("positive_stratum: length mismatch");
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < S.size(); ++i)
        if (S(i) == 1 || (strict ? y_hat(i) > t : y_hat(i) >= t)) idx.push_back(i);
    return idx;
}

inline VectorXd predict_posterior(const FittedPUModel& model, const Eigen::Ref<const MatrixXd>& X) {
    return linear_predictors(model.posterior, X).unaryExpr([](double t) { return sigmoid(t); });
}

inline std::optional<VectorXd> predict_propensity(const FittedPUModel& model,
                                                  const Eigen::Ref<const MatrixXd>& X) {
    if (!model.propensity) return std::nullopt;
    return linear_predictors(*model.propensity, X).unaryExpr([](double t) { return sigmoid(t); });
}

// Hard labels at the Bayes threshold; exactly 0.5 classifies as 0.
inline VectorXi classify(const Eigen::Ref<const VectorXd>& probs) {
    VectorXi labels(probs.size());
    for (Eigen::Index i = 0; i < probs.size(); ++i) labels(i) = probs(i) > 0.5 ? 1 : 0;
    return labels;
}

namespace detail {

inline VectorXd to_double(const VectorXi& v) { return v.cast<double>(); }

inline void require_both_classes(const VectorXi& v, const char* who) {
    const int mn = v.minCoeff(), mx = v.maxCoeff();
    if (mn == mx) throw std::invalid_argument(std::string(who) + ": need both classes present");
}

// Deterministic propensity-model start: intercept matching the mean initial
// propensity estimate, slopes zero.
inline LinearParams propensity_init(const VectorXd& e_values, Eigen::Index p) {
    const double mean_e = std::clamp(e_values.mean(), 1e-12, 1.0 - 1e-12);
    return {std::log(mean_e / (1.0 - mean_e)), VectorXd::Zero(p)};
}

// Pseudo-row expansion of the weighted posterior objective: a labelled row
// contributes (target 1, weight 1); an unlabelled row contributes
// (target 1, weight OR_i) and (target 0, weight 1-OR_i). The design is
// fixed across outer iterations; only weights move.
struct PosteriorFitDesign {
    MatrixXd X;
    VectorXd target;
    std::vector<Eigen::Index> source;
    std::vector<int> role;  // 0 labelled, 1 unlabelled-positive, 2 unlabelled-negative

    static PosteriorFitDesign build(const PUDataset& pu) {
        const Eigen::Index n = pu.n();
        Eigen::Index n0 = 0;
        for (Eigen::Index i = 0; i < n; ++i)
            if (pu.S(i) == 0) ++n0;
        PosteriorFitDesign d;
        d.X.resize(n + n0, pu.p());
        d.target.resize(n + n0);
        d.source.reserve(n + n0);
        d.role.reserve(n + n0);
        Eigen::Index r = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            d.X.row(r) = pu.X.row(i);
            d.target(r) = 1.0;
            d.source.push_back(i);
            d.role.push_back(pu.S(i) == 1 ? 0 : 1);
            ++r;
            if (pu.S(i) == 0) {
                d.X.row(r) = pu.X.row(i);
                d.target(r) = 0.0;
                d.source.push_back(i);
                d.role.push_back(2);
                ++r;
            }
        }
        return d;
    }

    VectorXd weights(const Eigen::Ref<const VectorXd>& or_values) const {
        VectorXd w(X.rows());
        for (Eigen::Index r = 0; r < X.rows(); ++r) {
            switch (role[static_cast<std::size_t>(r)]) {
                case 0: w(r) = 1.0; break;
                case 1: w(r) = or_values(source[static_cast<std::size_t>(r)]); break;
                default: w(r) = 1.0 - or_values(source[static_cast<std::size_t>(r)]); break;
            }
        }
        return w;
    }
};

inline VectorXd sigmoid_of(const VectorXd& eta) {
    return eta.unaryExpr([](double t) { return sigmoid(t); });
}

inline VectorXd odds_ratio_of(const VectorXd& e_hat, const VectorXd& s_hat) {
    VectorXd out(e_hat.size());
    for (Eigen::Index i = 0; i < e_hat.size(); ++i) out(i) = odds_ratio(e_hat(i), s_hat(i));
    return out;
}

// One block of the product-model likelihood with the other factor held
// fixed at per-row probabilities:
//   f(theta) = sum_i S_i [log sigma(eta_i) + log o_i]
//            + (1-S_i) log(1 - o_i sigma(eta_i)).
// Non-concave in theta whenever o_i < 1, hence solved with ascend_block.
struct JointBlock {
    const MatrixXd& X;
    const VectorXi& S;
    const VectorXd& other;
    double const_term = 0.0;

    JointBlock(const MatrixXd& X_, const VectorXi& S_, const VectorXd& other_)
        : X(X_), S(S_), other(other_) {
        for (Eigen::Index i = 0; i < S.size(); ++i)
            if (S(i) == 1) const_term += std::log(std::max(other(i), 1e-300));
    }

    double objective(const LinearParams& theta) const {
        const VectorXd eta = linear_predictors(theta, X);
        double f = const_term;
        for (Eigen::Index i = 0; i < S.size(); ++i) {
            if (S(i) == 1)
                f += log_sigmoid(eta(i));
            else
                f += log1m_prob_product(eta(i), other(i));
        }
        return f;
    }

    VectorXd gradient(const LinearParams& theta) const {
        const VectorXd eta = linear_predictors(theta, X);
        VectorXd deta(S.size());
        for (Eigen::Index i = 0; i < S.size(); ++i) {
            if (S(i) == 1) {
                deta(i) = sigmoid(-eta(i));
            } else {
                const double A = other(i) * sigmoid(eta(i)) * sigmoid(-eta(i));
                deta(i) = -A / one_minus_prob_product(eta(i), other(i));
            }
        }
        VectorXd g(X.cols() + 1);
        g(0) = deta.sum();
        g.tail(X.cols()) = X.transpose() * deta;
        return g;
    }

    MatrixXd hessian(const LinearParams& theta) const {
        const VectorXd eta = linear_predictors(theta, X);
        VectorXd curv(S.size());
        for (Eigen::Index i = 0; i < S.size(); ++i) {
            const double u = sigmoid(eta(i));
            if (S(i) == 1) {
                curv(i) = -u * (1.0 - u);
            } else {
                const double v = one_minus_prob_product(eta(i), other(i));
                const double A = other(i) * u * sigmoid(-eta(i));
                curv(i) = -A * ((1.0 - 2.0 * u) * v + A) / (v * v);
            }
        }
        const Eigen::Index p = X.cols();
        MatrixXd H(p + 1, p + 1);
        const MatrixXd Xc = X.array().colwise() * curv.array();
        H(0, 0) = curv.sum();
        H.block(0, 1, 1, p) = Xc.colwise().sum();
        H.block(1, 0, p, 1) = H.block(0, 1, 1, p).transpose();
        H.block(1, 1, p, p) = X.transpose() * Xc;
        return H;
    }
};

}  // namespace detail

// Plain logistic MLE of S on X; the baseline that estimates s(x) and uses it
// in place of y(x).
inline FittedPUModel fit_naive(const PUDataset& pu, const SolverConfig& cfg = {}) {
    pu.validate();
    detail::require_both_classes(pu.S, "fit_naive");
    auto [params, diag] = fit_weighted_logistic(pu.X, detail::to_double(pu.S),
                                                VectorXd::Ones(pu.n()), LinearParams{}, cfg);
    return {std::move(params), std::nullopt, Method::naive, std::move(diag), 1};
}

// Logistic MLE of the true Y on X; reference method for simulations.
inline FittedPUModel fit_oracle(const Dataset& ds, const SolverConfig& cfg = {}) {
    ds.validate();
    detail::require_both_classes(ds.Y, "fit_oracle");
    auto [params, diag] = fit_weighted_logistic(ds.X, detail::to_double(ds.Y),
                                                VectorXd::Ones(ds.n()), LinearParams{}, cfg);
    return {std::move(params), std::nullopt, Method::oracle, std::move(diag), 1};
}

// TM SIMPLE: fix the propensity at e_naive and solve the weighted posterior
// problem once.
inline FittedPUModel fit_tm_simple(const PUDataset& pu, const SolverConfig& cfg = {}) {
    FittedPUModel naive = fit_naive(pu, cfg);
    const VectorXd s_naive = detail::sigmoid_of(linear_predictors(naive.posterior, pu.X));
    const VectorXd e_naive = (s_naive.array() + 1.0) * 0.5;
    const VectorXd or_values = detail::odds_ratio_of(e_naive, s_naive);

    const detail::PosteriorFitDesign design = detail::PosteriorFitDesign::build(pu);
    auto [params, diag] =
        fit_weighted_logistic(design.X, design.target, design.weights(or_values), naive.posterior, cfg);
    return {std::move(params), std::nullopt, Method::tm_simple, std::move(diag), 1};
}

namespace detail {

// Shared outer loop of TM and EM; the two differ only in how Model 2 weights
// rows when refitting the propensity.
inline FittedPUModel fit_tm_like(const PUDataset& pu, Method method, const TMConfig& cfg) {
    pu.validate();
    cfg.validate();
    if (cfg.outer.max_iter < 1) throw std::invalid_argument("fit: outer max_iter must be >= 1");
    const Eigen::Index n = pu.n();

    FittedPUModel naive = fit_naive(pu, cfg.solver);
    VectorXd s_hat = sigmoid_of(linear_predictors(naive.posterior, pu.X));
    VectorXd e_hat = (s_hat.array() + 1.0) * 0.5;
    VectorXd or_values = odds_ratio_of(e_hat, s_hat);

    const double alpha = cfg.alpha_rule == TMConfig::AlphaRule::fixed
                             ? cfg.alpha
                             : pu.S.cast<double>().mean();

    const PosteriorFitDesign design = PosteriorFitDesign::build(pu);
    const VectorXd s_target = to_double(pu.S);

    LinearParams beta = naive.posterior;
    LinearParams gamma = propensity_init(e_hat, pu.p());

    FitDiagnostics outer_diag;
    double wn_prev = std::numeric_limits<double>::quiet_NaN();
    int outer = 0;
    for (outer = 1; outer <= cfg.outer.max_iter; ++outer) {
        // Model 1: weighted posterior fit under the current odds ratios
        auto [beta_new, diag1] =
            fit_weighted_logistic(design.X, design.target, design.weights(or_values), beta, cfg.solver);
        beta = std::move(beta_new);
        const double wn = diag1.final_objective / static_cast<double>(n);

        const VectorXd y_hat = sigmoid_of(linear_predictors(beta, pu.X));

        // Model 2: propensity on the approximate positive stratum (TM) or
        // with posterior weights (EM)
        VectorXd w2(n);
        if (method == Method::tm) {
            std::vector<double> labelled_scores;
            for (Eigen::Index i = 0; i < n; ++i)
                if (pu.S(i) == 1) labelled_scores.push_back(y_hat(i));
            const double t = label_quantile_threshold(labelled_scores, alpha);
            const auto members = positive_stratum(pu.S, y_hat, t, cfg.strict_threshold);
            w2.setZero();
            for (auto i : members) w2(i) = 1.0;
        } else {
            for (Eigen::Index i = 0; i < n; ++i) w2(i) = pu.S(i) == 1 ? 1.0 : or_values(i);
        }
        auto [gamma_new, diag2] = fit_weighted_logistic(pu.X, s_target, w2, gamma, cfg.solver);
        gamma = std::move(gamma_new);

        e_hat = sigmoid_of(linear_predictors(gamma, pu.X));
        s_hat = e_hat.array() * y_hat.array();
        or_values = odds_ratio_of(e_hat, s_hat);

        outer_diag.objective_trace.push_back(wn);
        if (outer > 1 && rel_change(wn, wn_prev) < cfg.outer.rel_tol) {
            outer_diag.converged = true;
            break;
        }
        wn_prev = wn;
    }
    outer = std::min(outer, cfg.outer.max_iter);
    outer_diag.iterations = outer;
    outer_diag.final_objective = outer_diag.objective_trace.back();
    return {std::move(beta), std::move(gamma), method, std::move(outer_diag), outer};
}

}  // namespace detail

// TWO MODELS: alternate the concave weighted posterior fit with a
// propensity fit on the approximate positive stratum. The threshold is the
// alpha-quantile of the labelled scores, alpha = fraction labelled by
// default, recomputed from the current posterior each iteration.
inline FittedPUModel fit_tm(const PUDataset& pu, const TMConfig& cfg = {}) {
    return detail::fit_tm_like(pu, Method::tm, cfg);
}

// EM-style variant: Model 2 weighs every row by the estimated
// P(Y=1 | S, X) = I{S=1} + I{S=0} OR(x) instead of stratum membership.
inline FittedPUModel fit_em(const PUDataset& pu, const FitConfig& cfg = {}) {
    TMConfig tm_cfg;
    tm_cfg.solver = cfg.solver;
    tm_cfg.outer = cfg.outer;
    return detail::fit_tm_like(pu, Method::em, tm_cfg);
}

// JOINT maximum likelihood: alternately maximize the non-concave
// product-model likelihood in
// beta~ and gamma~; the first pass uses the naive propensity values.
inline FittedPUModel fit_joint(const PUDataset& pu, const FitConfig& cfg = {}) {
    pu.validate();
    detail::require_both_classes(pu.S, "fit_joint");
    if (cfg.outer.max_iter < 1) throw std::invalid_argument("fit: outer max_iter must be >= 1");

    FittedPUModel naive = fit_naive(pu, cfg.solver);
    const VectorXd s_naive = detail::sigmoid_of(linear_predictors(naive.posterior, pu.X));
    VectorXd e_values = (s_naive.array() + 1.0) * 0.5;

    LinearParams beta = naive.posterior;
    LinearParams gamma = detail::propensity_init(e_values, pu.p());

    FitDiagnostics outer_diag;
    double q_prev = std::numeric_limits<double>::quiet_NaN();
    int outer = 0;
    for (outer = 1; outer <= cfg.outer.max_iter; ++outer) {
        {
            detail::JointBlock block(pu.X, pu.S, e_values);
            beta = ascend_block([&](const LinearParams& t) { return block.objective(t); },
                                [&](const LinearParams& t) { return block.gradient(t); }, beta,
                                cfg.solver,
                                [&](const LinearParams& t) { return block.hessian(t); })
                       .first;
        }
        const VectorXd y_values = detail::sigmoid_of(linear_predictors(beta, pu.X));
        {
            detail::JointBlock block(pu.X, pu.S, y_values);
            gamma = ascend_block([&](const LinearParams& t) { return block.objective(t); },
                                 [&](const LinearParams& t) { return block.gradient(t); }, gamma,
                                 cfg.solver,
                                 [&](const LinearParams& t) { return block.hessian(t); })
                        .first;
        }
        e_values = detail::sigmoid_of(linear_predictors(gamma, pu.X));

        const double q = pu_log_likelihood(beta, gamma, pu);
        outer_diag.objective_trace.push_back(q);
        if (outer > 1 && detail::rel_change(q, q_prev) < cfg.outer.rel_tol) {
            outer_diag.converged = true;
            break;
        }
        q_prev = q;
    }
    outer = std::min(outer, cfg.outer.max_iter);
    outer_diag.iterations = outer;
    outer_diag.final_objective = outer_diag.objective_trace.back();
    return {std::move(beta), std::move(gamma), Method::joint, std::move(outer_diag), outer};
}

// LBE: EM on the complete-data likelihood of the product model with an exact
// M-step (two concave weighted fits). The recorded objective is the
// observed-data mean log-likelihood, which EM ascends.
inline FittedPUModel fit_lbe(const PUDataset& pu, const FitConfig& cfg = {}) {
    pu.validate();
    detail::require_both_classes(pu.S, "fit_lbe");
    if (cfg.outer.max_iter < 1) throw std::invalid_argument("fit: outer max_iter must be >= 1");

    FittedPUModel naive = fit_naive(pu, cfg.solver);
    const VectorXd s_naive = detail::sigmoid_of(linear_predictors(naive.posterior, pu.X));
    const VectorXd e_naive = (s_naive.array() + 1.0) * 0.5;

    LinearParams beta = naive.posterior;
    LinearParams gamma = detail::propensity_init(e_naive, pu.p());
    const VectorXd s_target = detail::to_double(pu.S);
    const VectorXd ones = VectorXd::Ones(pu.n());

    FitDiagnostics outer_diag;
    double ll_prev = std::numeric_limits<double>::quiet_NaN();
    int outer = 0;
    for (outer = 1; outer <= cfg.outer.max_iter; ++outer) {
        const VectorXd post = lbe_e_step(beta, gamma, pu);
        beta = fit_weighted_logistic(pu.X, post, ones, beta, cfg.solver).first;
        gamma = fit_weighted_logistic(pu.X, s_target, post, gamma, cfg.solver).first;

        const double ll = pu_log_likelihood(beta, gamma, pu);
        outer_diag.objective_trace.push_back(ll);
        if (outer > 1 && detail::rel_change(ll, ll_prev) < cfg.outer.rel_tol) {
            outer_diag.converged = true;
            break;
        }
        ll_prev = ll;
    }
    outer = std::min(outer, cfg.outer.max_iter);
    outer_diag.iterations = outer;
    outer_diag.final_objective = outer_diag.objective_trace.back();
    return {std::move(beta), std::move(gamma), Method::lbe, std::move(outer_diag), outer};
}

}  // namespace pulearn
