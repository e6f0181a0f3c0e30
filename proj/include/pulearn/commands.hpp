#pragma once

// Implementation of the CLI subcommands (fit / predict / simulate /
// experiment) as library functions, so the binary stays a thin argument
// parser and the behaviour is testable in-process.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "pulearn/dataset.hpp"
#include "pulearn/estimators.hpp"
#include "pulearn/harness.hpp"
#include "pulearn/json_io.hpp"
#include "pulearn/synth.hpp"

namespace pulearn {

constexpr int kModelSchemaVersion = 1;

struct ModelFile {
    FittedPUModel model;
    std::vector<std::string> feature_names;
    ScalingParams scaling;
    std::string label_column;
};

inline void write_model_file(const std::string& path, const ModelFile& mf) {
    Json j{{"schema_version", kModelSchemaVersion},
           {"generated_at", iso8601_now()},
           {"label_column", mf.label_column},
           {"feature_names", mf.feature_names},
           {"scaling", to_json(mf.scaling)},
           {"model", to_json(mf.model)}};
    detail::write_atomic(path, j.dump(2) + "\n");
}

inline ModelFile read_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file " + path);
    Json j = Json::parse(in);
    if (j.at("schema_version").get<int>() != kModelSchemaVersion)
        throw std::runtime_error("unsupported model schema_version in " + path);
    ModelFile mf;
    mf.label_column = j.at("label_column").get<std::string>();
    mf.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    mf.scaling = scaling_from_json(j.at("scaling"));
    mf.model = model_from_json(j.at("model"));
    return mf;
}

struct FitOptions {
    std::string method = "naive";
    std::string data_path;
    std::string label_column;
    std::vector<std::string> ignore_columns;
    std::string out_path = "model.json";
    SolverConfig solver{};
    SolverConfig outer{};
};

// Fit one method on a CSV treated as PU data (the label column is S) and
// store the model together with the scaling record.
inline ModelFile fit_command(const FitOptions& opt) {
    const Method method = method_from_name(opt.method);
    CsvSource src{opt.data_path, opt.label_column, opt.ignore_columns};
    const Dataset raw = detail::load_csv_source(src);

    std::vector<Eigen::Index> all_rows(static_cast<std::size_t>(raw.n()));
    std::iota(all_rows.begin(), all_rows.end(), Eigen::Index{0});
    auto [std_ds, scaling] = standardize(raw, all_rows);

    const PUDataset pu{std_ds.X, std_ds.Y, std::nullopt};
    FittedPUModel model;
    switch (method) {
        case Method::naive: model = fit_naive(pu, opt.solver); break;
        case Method::tm: {
            TMConfig cfg;
            cfg.solver = opt.solver;
            cfg.outer = opt.outer;
            model = fit_tm(pu, cfg);
            break;
        }
        case Method::tm_simple: model = fit_tm_simple(pu, opt.solver); break;
        case Method::joint: model = fit_joint(pu, {opt.solver, opt.outer}); break;
        case Method::em: model = fit_em(pu, {opt.solver, opt.outer}); break;
        case Method::lbe: model = fit_lbe(pu, {opt.solver, opt.outer}); break;
        case Method::oracle: model = fit_oracle(std_ds, opt.solver); break;
    }

    ModelFile mf{std::move(model), raw.feature_names, std::move(scaling), opt.label_column};
    write_model_file(opt.out_path, mf);
    return mf;
}

struct PredictOptions {
    std::string model_path;
    std::string data_path;
    std::vector<std::string> ignore_columns;
    std::string out_path = "predictions.csv";
};

struct Predictions {
    VectorXd y_hat;
    std::optional<VectorXd> e_hat;
};

// Score new rows with a stored model. The encoded feature names must match
// the model's exactly; the label column used at fit time is dropped when
// present.
inline Predictions predict_command(const PredictOptions& opt) {
    const ModelFile mf = read_model_file(opt.model_path);

    RawTable table = read_csv_table(opt.data_path);
    RawTable features;
    features.rows = table.rows;
    for (auto& col : table.columns) {
        if (col.name == mf.label_column) continue;
        if (std::find(opt.ignore_columns.begin(), opt.ignore_columns.end(), col.name) !=
            opt.ignore_columns.end())
            continue;
        features.columns.push_back(std::move(col));
    }
    EncodedFeatures enc = one_hot_encode(features);
    if (enc.names != mf.feature_names) {
        std::string msg = "predict: feature schema mismatch; model expects [";
        for (std::size_t i = 0; i < mf.feature_names.size(); ++i)
            msg += (i ? "," : "") + mf.feature_names[i];
        msg += "] but data provides [";
        for (std::size_t i = 0; i < enc.names.size(); ++i) msg += (i ? "," : "") + enc.names[i];
        msg += "]";
        throw std::runtime_error(msg);
    }

    const MatrixXd X = apply_scaling(enc.X, mf.scaling);
    Predictions pred;
    pred.y_hat = predict_posterior(mf.model, X);
    if (auto e = predict_propensity(mf.model, X)) pred.e_hat = std::move(*e);

    std::string out = pred.e_hat ? "y_hat,e_hat\n" : "y_hat\n";
    char buf[80];
    for (Eigen::Index i = 0; i < pred.y_hat.size(); ++i) {
        if (pred.e_hat)
            std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", pred.y_hat(i), (*pred.e_hat)(i));
        else
            std::snprintf(buf, sizeof buf, "%.17g\n", pred.y_hat(i));
        out += buf;
    }
    detail::write_atomic(opt.out_path, out);
    return pred;
}

struct SimulateOptions {
    int artif = 1;  // 1 = logistic response, 2 = cauchy response
    Eigen::Index n = 2000;
    Eigen::Index p = 50;
    ScenarioSpec scenario = ScenarioSpec::scar(0.5);
    std::uint64_t seed = 1;
    std::string out_path = "simulated.csv";
};

// Generate an artificial PU dataset and write features, the hidden class y
// and the observed label s. Fitting tools should be pointed at s and told to
// ignore y.
inline PUDataset simulate_command(const SimulateOptions& opt) {
    if (opt.artif != 1 && opt.artif != 2)
        throw std::invalid_argument("simulate: artif must be 1 or 2");
    ArtifSpec spec;
    spec.n = opt.n;
    spec.p = opt.p;
    spec.link = opt.artif == 1 ? Link::logistic : Link::cauchy;
    const Dataset ds = gen_artif(spec, derive_seed(opt.seed, 101));
    const PUDataset pu = apply_labelling(ds, opt.scenario, derive_seed(opt.seed, 202));

    std::string out;
    for (Eigen::Index j = 0; j < ds.p(); ++j) out += ds.feature_names[j] + ",";
    out += "y,s\n";
    char buf[40];
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        for (Eigen::Index j = 0; j < ds.p(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g,", ds.X(i, j));
            out += buf;
        }
        out += std::to_string(ds.Y(i)) + "," + std::to_string(pu.S(i)) + "\n";
    }
    detail::write_atomic(opt.out_path, out);
    return pu;
}

struct ExperimentOptions {
    std::string config_path;
    std::vector<ReportFormat> formats{ReportFormat::json, ReportFormat::csv, ReportFormat::plotdata};
    std::optional<std::string> output_dir_override;
};

inline EvalReport experiment_command(const ExperimentOptions& opt) {
    std::ifstream in(opt.config_path);
    if (!in) throw std::runtime_error("cannot open config file " + opt.config_path);
    ExperimentConfig cfg = config_from_json(Json::parse(in));
    if (opt.output_dir_override) cfg.output_dir = *opt.output_dir_override;
    const EvalReport report = run_experiment(cfg);
    emit_report(cfg, report, opt.formats);
    return report;
}

}  // namespace pulearn
