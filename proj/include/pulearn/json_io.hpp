#pragma once

// JSON (de)serialization for models, scaling records and evaluation reports.
// Insertion-ordered JSON keeps emitted files deterministic.

#include <json.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "pulearn/dataset.hpp"
#include "pulearn/estimators.hpp"
#include "pulearn/metrics.hpp"
#include "pulearn/synth.hpp"

namespace pulearn {

using Json = nlohmann::ordered_json;

inline Json to_json(const VectorXd& v) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

inline VectorXd vector_from_json(const Json& j) {
    VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    return v;
}

// NaN is not representable in JSON; sweep values for the fixed scenario 3 are
// stored as null.
inline Json number_or_null(double v) { return std::isnan(v) ? Json(nullptr) : Json(v); }

inline double number_from_json(const Json& j) {
    return j.is_null() ? std::nan("") : j.get<double>();
}

inline Json to_json(const LinearParams& p) {
    return Json{{"intercept", p.intercept}, {"coefficients", to_json(p.coefficients)}};
}

inline LinearParams linear_params_from_json(const Json& j) {
    return {j.at("intercept").get<double>(), vector_from_json(j.at("coefficients"))};
}

inline Json to_json(const ScalingParams& sp) {
    return Json{{"means", to_json(sp.means)}, {"std_devs", to_json(sp.std_devs)}};
}

inline ScalingParams scaling_from_json(const Json& j) {
    return {vector_from_json(j.at("means")), vector_from_json(j.at("std_devs"))};
}

inline Json to_json(const FitDiagnostics& d) {
    return Json{{"iterations", d.iterations},
                {"final_objective", d.final_objective},
                {"converged", d.converged}};
}

inline FitDiagnostics diagnostics_from_json(const Json& j) {
    FitDiagnostics d;
    d.iterations = j.at("iterations").get<int>();
    d.final_objective = j.at("final_objective").get<double>();
    d.converged = j.at("converged").get<bool>();
    return d;
}

inline Json to_json(const FittedPUModel& m) {
    Json j{{"method", method_name(m.method)},
           {"posterior", to_json(m.posterior)},
           {"propensity", nullptr},
           {"outer_iterations", m.outer_iterations},
           {"diagnostics", to_json(m.diagnostics)}};
    if (m.propensity) j["propensity"] = to_json(*m.propensity);
    return j;
}

inline FittedPUModel model_from_json(const Json& j) {
    FittedPUModel m;
    m.method = method_from_name(j.at("method").get<std::string>());
    m.posterior = linear_params_from_json(j.at("posterior"));
    if (!j.at("propensity").is_null()) m.propensity = linear_params_from_json(j.at("propensity"));
    m.outer_iterations = j.at("outer_iterations").get<int>();
    m.diagnostics = diagnostics_from_json(j.at("diagnostics"));
    return m;
}

inline Json to_json(const ScenarioSpec& s) {
    Json j{{"kind", scenario_kind_name(s.kind)}};
    switch (s.kind) {
        case ScenarioKind::scar_constant: j["c"] = s.c; break;
        case ScenarioKind::logistic_propensity: j["g"] = s.g; break;
        case ScenarioKind::product_scaled:
            j["k"] = static_cast<long long>(s.k);
            j["p_minus"] = s.p_minus;
            j["p_plus"] = s.p_plus;
            break;
    }
    return j;
}

inline ScenarioSpec scenario_from_json(const Json& j) {
    ScenarioSpec s;
    s.kind = scenario_kind_from_name(j.at("kind").get<std::string>());
    switch (s.kind) {
        case ScenarioKind::scar_constant: s.c = j.at("c").get<double>(); break;
        case ScenarioKind::logistic_propensity: s.g = j.at("g").get<double>(); break;
        case ScenarioKind::product_scaled:
            s.k = j.at("k").get<long long>();
            s.p_minus = j.at("p_minus").get<double>();
            s.p_plus = j.at("p_plus").get<double>();
            break;
    }
    return s;
}

inline Json to_json(const MetricRecord& r) {
    Json j{{"method", r.method},
           {"scenario_param", number_or_null(r.scenario_param)},
           {"replication", r.replication},
           {"accuracy", r.accuracy},
           {"ae", r.ae},
           {"failed", r.failed}};
    if (r.failed) j["error"] = r.error;
    return j;
}

inline MetricRecord record_from_json(const Json& j) {
    MetricRecord r;
    r.method = j.at("method").get<std::string>();
    r.scenario_param = number_from_json(j.at("scenario_param"));
    r.replication = j.at("replication").get<int>();
    r.accuracy = j.at("accuracy").get<double>();
    r.ae = j.at("ae").get<double>();
    r.failed = j.at("failed").get<bool>();
    if (j.contains("error")) r.error = j.at("error").get<std::string>();
    return r;
}

inline Json to_json(const MethodAggregate& a) {
    return Json{{"accuracy_mean", a.accuracy_mean}, {"accuracy_se", a.accuracy_se},
                {"ae_mean", a.ae_mean},             {"ae_se", a.ae_se},
                {"avg_rank_accuracy", a.avg_rank_accuracy}, {"avg_rank_ae", a.avg_rank_ae},
                {"failures", a.failures}};
}

inline MethodAggregate aggregate_from_json(const Json& j) {
    MethodAggregate a;
    a.accuracy_mean = j.at("accuracy_mean").get<double>();
    a.accuracy_se = j.at("accuracy_se").get<double>();
    a.ae_mean = j.at("ae_mean").get<double>();
    a.ae_se = j.at("ae_se").get<double>();
    a.avg_rank_accuracy = j.at("avg_rank_accuracy").get<double>();
    a.avg_rank_ae = j.at("avg_rank_ae").get<double>();
    a.failures = j.at("failures").get<int>();
    return a;
}

inline Json to_json(const EvalReport& rep) {
    Json aggregates = Json::object();
    for (const auto& m : rep.methods) {
        auto it = rep.aggregates.find(m);
        if (it != rep.aggregates.end()) aggregates[m] = to_json(it->second);
    }
    Json records = Json::array();
    for (const auto& r : rep.records) records.push_back(to_json(r));
    return Json{{"dataset", rep.dataset_name},
                {"rng_algorithm", rep.rng_algorithm},
                {"methods", rep.methods},
                {"aggregates", aggregates},
                {"winner_pvalue_accuracy", rep.winner_pvalue_accuracy},
                {"winner_pvalue_ae", rep.winner_pvalue_ae},
                {"records", records}};
}

inline EvalReport report_from_json(const Json& j) {
    EvalReport rep;
    rep.dataset_name = j.at("dataset").get<std::string>();
    rep.rng_algorithm = j.at("rng_algorithm").get<std::string>();
    rep.methods = j.at("methods").get<std::vector<std::string>>();
    for (const auto& [key, val] : j.at("aggregates").items())
        rep.aggregates[key] = aggregate_from_json(val);
    rep.winner_pvalue_accuracy = j.at("winner_pvalue_accuracy").get<double>();
    rep.winner_pvalue_ae = j.at("winner_pvalue_ae").get<double>();
    for (const auto& r : j.at("records")) rep.records.push_back(record_from_json(r));
    return rep;
}

}  // namespace pulearn
