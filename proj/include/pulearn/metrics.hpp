#pragma once

// Evaluation: accuracy, approximation error, deviance R^2, Welch's t-test
// and average ranks, plus the record/report types the harness aggregates.

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "pulearn/dataset.hpp"
#include "pulearn/estimators.hpp"

namespace pulearn {

inline double accuracy(const VectorXi& pred, const VectorXi& truth) {
    if (pred.size() != truth.size() || pred.size() == 0)
        throw std::invalid_argument("accuracy: length mismatch or empty");
    Eigen::Index agree = 0;
    for (Eigen::Index i = 0; i < pred.size(); ++i)
        if (pred(i) == truth(i)) ++agree;
    return static_cast<double>(agree) / static_cast<double>(pred.size());
}

// Mean absolute gap between two probability vectors.
inline double approximation_error(const Eigen::Ref<const VectorXd>& p_hat,
                                  const Eigen::Ref<const VectorXd>& p_ref) {
    if (p_hat.size() != p_ref.size() || p_hat.size() == 0)
        throw std::invalid_argument("approximation_error: length mismatch or empty");
    return (p_hat - p_ref).cwiseAbs().mean();
}

// Proportion of explained deviance, 1 - dev(model)/dev(null); the null model
// is the intercept-only fit, whose MLE is the class rate.
inline double deviance_r2(const FittedPUModel& model, const Dataset& ds) {
    ds.validate();
    detail::require_both_classes(ds.Y, "deviance_r2");
    const VectorXd eta = linear_predictors(model.posterior, ds.X);
    double dev_model = 0.0;
    for (Eigen::Index i = 0; i < ds.n(); ++i)
        dev_model += ds.Y(i) == 1 ? log_sigmoid(eta(i)) : log_sigmoid(-eta(i));
    dev_model *= -2.0;

    const double p_bar = ds.Y.cast<double>().mean();
    const double dev_null =
        -2.0 * static_cast<double>(ds.n()) * (p_bar * std::log(p_bar) + (1.0 - p_bar) * std::log(1.0 - p_bar));
    return 1.0 - dev_model / dev_null;
}

// Two-sided Welch t-test p-value with Welch-Satterthwaite degrees of freedom.
inline double welch_t_test(const std::vector<double>& sample_a, const std::vector<double>& sample_b) {
    if (sample_a.size() < 2 || sample_b.size() < 2)
        throw std::invalid_argument("welch_t_test: each sample needs size >= 2");
    const auto moments = [](const std::vector<double>& v) {
        const double n = static_cast<double>(v.size());
        const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
        double ss = 0.0;
        for (double x : v) ss += (x - mean) * (x - mean);
        return std::pair<double, double>{mean, ss / (n - 1.0)};
    };
    const auto [ma, va] = moments(sample_a);
    const auto [mb, vb] = moments(sample_b);
    const double na = static_cast<double>(sample_a.size());
    const double nb = static_cast<double>(sample_b.size());
    const double se2 = va / na + vb / nb;
    if (se2 <= 0.0) return ma == mb ? 1.0 : 0.0;  // degenerate zero-variance samples
    const double t = (ma - mb) / std::sqrt(se2);
    const double df = se2 * se2 / (va * va / (na * na * (na - 1.0)) + vb * vb / (nb * nb * (nb - 1.0)));
    boost::math::students_t dist(df);
    return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

// Rank within each row (1 = best, ties averaged), then column means.
inline VectorXd average_ranks(const Eigen::Ref<const MatrixXd>& metric, bool higher_is_better) {
    if (metric.rows() == 0 || metric.cols() == 0)
        throw std::invalid_argument("average_ranks: empty matrix");
    if (!metric.allFinite()) throw std::invalid_argument("average_ranks: non-finite entries");
    const Eigen::Index m = metric.cols();
    VectorXd sums = VectorXd::Zero(m);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
    for (Eigen::Index r = 0; r < metric.rows(); ++r) {
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
            return higher_is_better ? metric(r, a) > metric(r, b) : metric(r, a) < metric(r, b);
        });
        std::size_t i = 0;
        while (i < order.size()) {
            std::size_t j = i;
            while (j + 1 < order.size() && metric(r, order[j + 1]) == metric(r, order[i])) ++j;
            const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
            for (std::size_t k = i; k <= j; ++k) sums(order[k]) += avg_rank;
            i = j + 1;
        }
    }
    return sums / static_cast<double>(metric.rows());
}

// One (method, sweep point, replication) evaluation.
struct MetricRecord {
    std::string method;
    double scenario_param = 0.0;  // c or g; NaN for the fixed scenario 3
    int replication = 0;
    double accuracy = 0.0;
    double ae = 0.0;
    bool failed = false;
    std::string error;
};

struct MethodAggregate {
    double accuracy_mean = 0.0;
    double accuracy_se = 0.0;
    double ae_mean = 0.0;
    double ae_se = 0.0;
    double avg_rank_accuracy = 0.0;
    double avg_rank_ae = 0.0;
    int failures = 0;
};

struct EvalReport {
    std::vector<std::string> methods;  // report column order
    std::vector<MetricRecord> records;
    std::map<std::string, MethodAggregate> aggregates;
    double winner_pvalue_accuracy = 1.0;
    double winner_pvalue_ae = 1.0;
    std::string dataset_name;
    std::string rng_algorithm;
};

}  // namespace pulearn
