#pragma once

// Numerical kernel: stable logistic primitives, weighted logistic maximum
// likelihood (damped Newton / IRLS with backtracking), and a generic
// monotone-ascent solver for non-concave block objectives.

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pulearn {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// sigma(t) = 1/(1+exp(-t)), no overflow for any finite t
inline double sigmoid(double t) {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
}

// log sigma(t) computed in log-space; finite for any finite t
inline double log_sigmoid(double t) {
    if (t >= 0.0) return -std::log1p(std::exp(-t));
    return t - std::log1p(std::exp(t));
}

struct LinearParams {
    double intercept = 0.0;
    VectorXd coefficients;

    LinearParams() = default;
    LinearParams(double b0, VectorXd b) : intercept(b0), coefficients(std::move(b)) {}

    static LinearParams zeros(Eigen::Index p) { return {0.0, VectorXd::Zero(p)}; }

    Eigen::Index dim() const { return coefficients.size(); }

    bool is_finite() const {
        return std::isfinite(intercept) && coefficients.allFinite();
    }
};

inline double linear_predictor(const LinearParams& params, const Eigen::Ref<const VectorXd>& x) {
    if (x.size() != params.dim())
        throw std::invalid_argument("linear_predictor: dimension mismatch");
    return params.intercept + params.coefficients.dot(x);
}

inline VectorXd linear_predictors(const LinearParams& params, const Eigen::Ref<const MatrixXd>& X) {
    if (X.cols() != params.dim())
        throw std::invalid_argument("linear_predictors: dimension mismatch");
    return ((X * params.coefficients).array() + params.intercept).matrix();
}

struct SolverConfig {
    double rel_tol = 1e-6;
    int max_iter = 1000;
    double ridge = 1e-8;
    int max_backtracks = 50;
};

struct FitDiagnostics {
    int iterations = 0;
    double final_objective = 0.0;
    bool converged = false;
    std::vector<double> objective_trace;
};

namespace detail {

inline VectorXd pack(const LinearParams& p) {
    VectorXd v(p.dim() + 1);
    v(0) = p.intercept;
    v.tail(p.dim()) = p.coefficients;
    return v;
}

inline LinearParams unpack(const VectorXd& v) {
    return {v(0), v.tail(v.size() - 1)};
}

inline double rel_change(double next, double prev) {
    return std::abs(next - prev) / std::max(1.0, std::abs(prev));
}

// Newton steps are capped in sup-norm; under separation the ridge-dominated
// direction would otherwise be astronomically long.
constexpr double kMaxStepInf = 10.0;
// Parameter norms beyond this at termination signal a separation blow-up;
// the fit is still returned but flagged converged=false.
constexpr double kBlowupNorm = 1e3;

}  // namespace detail

// Objective maximized by fit_weighted_logistic:
//   sum_i w_i [ t_i log sigma(eta_i) + (1-t_i) log sigma(-eta_i) ],
// eta_i = b0 + b.x_i, t_i in [0,1] (fractional targets allowed).
inline double weighted_logistic_objective(const Eigen::Ref<const MatrixXd>& X,
                                          const Eigen::Ref<const VectorXd>& target,
                                          const Eigen::Ref<const VectorXd>& weights,
                                          const LinearParams& params) {
    const VectorXd eta = linear_predictors(params, X);
    double obj = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
        if (weights(i) == 0.0) continue;
        obj += weights(i) * (target(i) * log_sigmoid(eta(i)) +
                             (1.0 - target(i)) * log_sigmoid(-eta(i)));
    }
    return obj;
}

// Gradient of the weighted logistic objective, packed as [d/db0, d/db].
inline VectorXd weighted_logistic_gradient(const Eigen::Ref<const MatrixXd>& X,
                                           const Eigen::Ref<const VectorXd>& target,
                                           const Eigen::Ref<const VectorXd>& weights,
                                           const LinearParams& params) {
    const VectorXd eta = linear_predictors(params, X);
    VectorXd r(eta.size());
    for (Eigen::Index i = 0; i < eta.size(); ++i)
        r(i) = weights(i) * (target(i) - sigmoid(eta(i)));
    VectorXd g(X.cols() + 1);
    g(0) = r.sum();
    g.tail(X.cols()) = X.transpose() * r;
    return g;
}

// Weighted logistic maximum likelihood via damped Newton with backtracking.
// The objective is concave, so the trace is nondecreasing and the ridge term
// only regularizes rank-deficient or separated designs.
inline std::pair<LinearParams, FitDiagnostics> fit_weighted_logistic(
    const Eigen::Ref<const MatrixXd>& X, const Eigen::Ref<const VectorXd>& target,
    const Eigen::Ref<const VectorXd>& case_weights, const LinearParams& init = {},
    const SolverConfig& cfg = {}) {
    const Eigen::Index n = X.rows();
    const Eigen::Index p = X.cols();
    if (target.size() != n || case_weights.size() != n)
        throw std::invalid_argument("fit_weighted_logistic: row count mismatch");
    if ((case_weights.array() < 0.0).any() || case_weights.maxCoeff() <= 0.0)
        throw std::invalid_argument("fit_weighted_logistic: need nonnegative weights, at least one positive");
    if ((target.array() < 0.0).any() || (target.array() > 1.0).any())
        throw std::invalid_argument("fit_weighted_logistic: targets must lie in [0,1]");

    LinearParams theta = init;
    if (theta.dim() == 0 && p > 0) theta = LinearParams::zeros(p);
    if (theta.dim() != p)
        throw std::invalid_argument("fit_weighted_logistic: init dimension mismatch");

    FitDiagnostics diag;
    double obj = weighted_logistic_objective(X, target, case_weights, theta);
    if (!std::isfinite(obj))
        throw std::runtime_error("fit_weighted_logistic: non-finite objective at init");
    diag.objective_trace.push_back(obj);

    VectorXd eta(n), r(n), curv(n);
    MatrixXd H(p + 1, p + 1);
    VectorXd g(p + 1), d(p + 1);

    for (int iter = 1; iter <= cfg.max_iter; ++iter) {
        diag.iterations = iter;
        eta = linear_predictors(theta, X);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double mu = sigmoid(eta(i));
            r(i) = case_weights(i) * (target(i) - mu);
            curv(i) = case_weights(i) * mu * (1.0 - mu);
        }
        g(0) = r.sum();
        g.tail(p) = X.transpose() * r;

        // negative Hessian of the objective (PSD), plus ridge
        const MatrixXd Xc = X.array().colwise() * curv.array();
        H(0, 0) = curv.sum();
        H.block(0, 1, 1, p) = Xc.colwise().sum();
        H.block(1, 0, p, 1) = H.block(0, 1, 1, p).transpose();
        H.block(1, 1, p, p) = X.transpose() * Xc;
        H.diagonal().array() += cfg.ridge;

        Eigen::LLT<MatrixXd> llt(H);
        double tau = cfg.ridge;
        while (llt.info() != Eigen::Success && tau < 1e12) {
            tau *= 10.0;
            MatrixXd Hs = H;
            Hs.diagonal().array() += tau;
            llt.compute(Hs);
        }
        d = llt.solve(g);
        const double dinf = d.lpNorm<Eigen::Infinity>();
        if (dinf > detail::kMaxStepInf) d *= detail::kMaxStepInf / dinf;
        const double gd = g.dot(d);

        double step = 1.0;
        bool accepted = false;
        LinearParams cand;
        double cand_obj = obj;
        for (int b = 0; b <= cfg.max_backtracks; ++b) {
            cand = LinearParams{theta.intercept + step * d(0),
                                theta.coefficients + step * d.tail(p)};
            cand_obj = weighted_logistic_objective(X, target, case_weights, cand);
            if (std::isfinite(cand_obj) && cand_obj >= obj + 1e-4 * step * gd) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // stationary or numerically stuck

        const double change = detail::rel_change(cand_obj, obj);
        theta = cand;
        obj = cand_obj;
        diag.objective_trace.push_back(obj);
        if (change < cfg.rel_tol) {
            diag.converged = true;
            break;
        }
    }

    const double norm_inf = std::max(std::abs(theta.intercept),
                                     theta.dim() > 0 ? theta.coefficients.lpNorm<Eigen::Infinity>() : 0.0);
    if (norm_inf > detail::kBlowupNorm) diag.converged = false;
    diag.final_objective = obj;
    return {theta, diag};
}

using ObjectiveFn = std::function<double(const LinearParams&)>;
using GradientFn = std::function<VectorXd(const LinearParams&)>;
using HessianFn = std::function<MatrixXd(const LinearParams&)>;

// Monotone Newton ascent for a (possibly non-concave) objective. The Hessian
// callback is optional; when absent it is built by central differences of the
// gradient. Indefinite Hessians are shifted until positive definite, so every
// accepted step is an ascent step and the trace is nondecreasing.
inline std::pair<LinearParams, FitDiagnostics> ascend_block(
    const ObjectiveFn& objective, const GradientFn& gradient, const LinearParams& init,
    const SolverConfig& cfg = {}, const HessianFn& hessian = nullptr) {
    const Eigen::Index m = init.dim() + 1;
    LinearParams theta = init;

    FitDiagnostics diag;
    double obj = objective(theta);
    if (!std::isfinite(obj))
        throw std::runtime_error("ascend_block: objective non-finite at init");
    diag.objective_trace.push_back(obj);

    for (int iter = 1; iter <= cfg.max_iter; ++iter) {
        diag.iterations = iter;
        const VectorXd g = gradient(theta);
        if (g.size() != m) throw std::invalid_argument("ascend_block: gradient size mismatch");

        MatrixXd H;
        if (hessian) {
            H = hessian(theta);
        } else {
            H.resize(m, m);
            const VectorXd t0 = detail::pack(theta);
            for (Eigen::Index j = 0; j < m; ++j) {
                const double h = 1e-6 * (1.0 + std::abs(t0(j)));
                VectorXd tp = t0, tm = t0;
                tp(j) += h;
                tm(j) -= h;
                H.col(j) = (gradient(detail::unpack(tp)) - gradient(detail::unpack(tm))) / (2.0 * h);
            }
            H = ((H + H.transpose()) / 2.0).eval();
        }

        // shift -H until positive definite
        MatrixXd A = -H;
        A.diagonal().array() += cfg.ridge;
        Eigen::LLT<MatrixXd> llt(A);
        double tau = std::max(cfg.ridge, 1e-10);
        while (llt.info() != Eigen::Success && tau < 1e12) {
            tau *= 10.0;
            MatrixXd As = -H;
            As.diagonal().array() += tau;
            llt.compute(As);
        }
        VectorXd d = llt.solve(g);
        double gd = g.dot(d);
        if (!(gd >= 0.0) || !d.allFinite()) {
            d = g;  // fall back to steepest ascent
            gd = g.squaredNorm();
        }
        const double dinf = d.lpNorm<Eigen::Infinity>();
        if (dinf > detail::kMaxStepInf) {
            d *= detail::kMaxStepInf / dinf;
            gd = g.dot(d);
        }

        double step = 1.0;
        bool accepted = false;
        LinearParams cand;
        double cand_obj = obj;
        for (int b = 0; b <= cfg.max_backtracks; ++b) {
            cand = LinearParams{theta.intercept + step * d(0),
                                theta.coefficients + step * d.tail(m - 1)};
            cand_obj = objective(cand);
            if (std::isfinite(cand_obj) && cand_obj >= obj + 1e-4 * step * gd) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            diag.converged = true;  // no ascent direction makes progress
            break;
        }

        const double change = detail::rel_change(cand_obj, obj);
        theta = cand;
        obj = cand_obj;
        diag.objective_trace.push_back(obj);
        if (change < cfg.rel_tol) {
            diag.converged = true;
            break;
        }
    }
    diag.final_objective = obj;
    return {theta, diag};
}

}  // namespace pulearn
