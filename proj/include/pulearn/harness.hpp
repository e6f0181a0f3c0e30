#pragma once

// Configuration-driven experiment runner: per replication, (re)generate or
// reload data, apply a labelling scenario, split, standardize, fit every
// requested method and score it on the held-out rows. Cells are independent
// and may run on several threads; report assembly is a deterministic reduce.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "pulearn/dataset.hpp"
#include "pulearn/estimators.hpp"
#include "pulearn/json_io.hpp"
#include "pulearn/metrics.hpp"
#include "pulearn/rng.hpp"
#include "pulearn/synth.hpp"

namespace pulearn {

constexpr int kReportSchemaVersion = 1;

struct ArtifSource {
    ArtifSpec spec;
};

struct CsvSource {
    std::string path;
    std::string label_column;
    std::vector<std::string> ignore_columns;
};

struct ExperimentConfig {
    std::variant<ArtifSource, CsvSource> source;
    ScenarioSpec scenario;
    std::vector<double> sweep;  // values of c (scenario 1) or g (scenario 2); empty = single point
    std::vector<Method> methods{Method::naive, Method::tm};
    int replications = 100;
    double train_fraction = 0.7;
    std::uint64_t base_seed = 1;
    SolverConfig solver{};
    SolverConfig outer{};
    TMConfig::AlphaRule alpha_rule = TMConfig::AlphaRule::fraction_labelled;
    double alpha = 0.5;
    bool strict_threshold = true;
    std::string output_dir = "out";

    TMConfig tm_config() const {
        TMConfig cfg;
        cfg.alpha_rule = alpha_rule;
        cfg.alpha = alpha;
        cfg.strict_threshold = strict_threshold;
        cfg.solver = solver;
        cfg.outer = outer;
        return cfg;
    }

    FitConfig fit_config() const { return {solver, outer}; }

    void validate() const {
        if (methods.empty()) throw std::invalid_argument("config: need at least one method");
        if (replications < 1) throw std::invalid_argument("config: replications must be >= 1");
        if (!(train_fraction > 0.0 && train_fraction < 1.0))
            throw std::invalid_argument("config: train_fraction must lie in (0,1)");
        if (solver.max_iter < 1 || outer.max_iter < 1)
            throw std::invalid_argument("config: max_iter must be >= 1");
        scenario.validate();
        for (double v : sweep) scenario.with_sweep_value(v).validate();
        if (std::holds_alternative<ArtifSource>(source)) std::get<ArtifSource>(source).spec.validate();
    }

    std::string dataset_name() const {
        if (std::holds_alternative<ArtifSource>(source)) {
            const auto& spec = std::get<ArtifSource>(source).spec;
            return spec.link == Link::logistic ? "artif1" : "artif2";
        }
        return std::filesystem::path(std::get<CsvSource>(source).path).stem().string();
    }
};

inline unsigned harness_thread_count(std::size_t cells) {
    unsigned n = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("PULEARN_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n = static_cast<unsigned>(v);
    }
    if (n < 1) n = 1;
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(cells, 1)));
}

namespace detail {

struct CellOutcome {
    double accuracy = 0.0;
    double ae = 0.0;
    bool failed = false;
    std::string error;
};

inline Dataset load_csv_source(const CsvSource& src) {
    RawTable table = read_csv_table(src.path);
    if (!src.ignore_columns.empty()) {
        RawTable filtered;
        filtered.rows = table.rows;
        for (auto& col : table.columns) {
            const bool drop = std::find(src.ignore_columns.begin(), src.ignore_columns.end(),
                                        col.name) != src.ignore_columns.end();
            if (!drop) filtered.columns.push_back(std::move(col));
        }
        table = std::move(filtered);
    }
    const std::size_t label_idx = resolve_column(table, src.label_column);
    const RawColumn& label = table.columns[label_idx];
    if (!label.numeric) throw std::runtime_error("csv source: label column is not numeric");
    VectorXi Y(static_cast<Eigen::Index>(table.rows));
    for (std::size_t i = 0; i < table.rows; ++i) {
        const double v = label.numbers[i];
        if (v != 0.0 && v != 1.0) throw std::runtime_error("csv source: label value outside {0,1}");
        Y(static_cast<Eigen::Index>(i)) = static_cast<int>(v);
    }
    RawTable features;
    features.rows = table.rows;
    for (std::size_t j = 0; j < table.columns.size(); ++j)
        if (j != label_idx) features.columns.push_back(std::move(table.columns[j]));
    EncodedFeatures enc = one_hot_encode(features);
    if (enc.X.cols() == 0) throw std::runtime_error("csv source: no usable feature columns");
    Dataset ds{std::move(enc.X), std::move(Y), std::move(enc.names)};
    ds.validate();
    return ds;
}

// One (sweep point, replication) cell: returns one outcome per method, in
// config order.
inline std::vector<CellOutcome> run_cell(const ExperimentConfig& cfg, const Dataset* csv_data,
                                         const ScenarioSpec& scenario, std::size_t sweep_idx,
                                         int replication) {
    std::vector<CellOutcome> out(cfg.methods.size());
    const std::uint64_t cell_seed =
        derive_seed(cfg.base_seed, static_cast<std::uint64_t>(sweep_idx),
                    static_cast<std::uint64_t>(replication));
    try {
        Dataset data = csv_data != nullptr
                           ? *csv_data
                           : gen_artif(std::get<ArtifSource>(cfg.source).spec, derive_seed(cell_seed, 101));
        PUDataset pu = apply_labelling(data, scenario, derive_seed(cell_seed, 202));
        auto [train_idx, test_idx] = split_indices(data.n(), cfg.train_fraction, derive_seed(cell_seed, 303));

        const ScalingParams scaling = fit_scaling(data.X, train_idx);
        const MatrixXd X_train = apply_scaling(take_rows(data.X, train_idx), scaling);
        const MatrixXd X_test = apply_scaling(take_rows(data.X, test_idx), scaling);
        const VectorXi Y_train = take_rows_int(data.Y, train_idx);
        const VectorXi Y_test = take_rows_int(data.Y, test_idx);
        const PUDataset train{X_train, take_rows_int(pu.S, train_idx), Y_train};

        // AE reference: true posterior for artificial data, the oracle fit for
        // CSV benchmarks.
        VectorXd ref_probs;
        std::optional<FittedPUModel> oracle_model;
        if (csv_data == nullptr) {
            const auto& spec = std::get<ArtifSource>(cfg.source).spec;
            const LinearParams beta_star = spec.effective_beta();
            const MatrixXd X_test_raw = take_rows(data.X, test_idx);
            ref_probs.resize(X_test_raw.rows());
            for (Eigen::Index i = 0; i < X_test_raw.rows(); ++i)
                ref_probs(i) =
                    link_cdf(spec.link, linear_predictor(beta_star, X_test_raw.row(i).transpose()));
        } else {
            oracle_model = fit_oracle(Dataset{X_train, Y_train, {}}, cfg.solver);
            ref_probs = predict_posterior(*oracle_model, X_test);
        }

        for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
            try {
                FittedPUModel model;
                switch (cfg.methods[mi]) {
                    case Method::naive: model = fit_naive(train, cfg.solver); break;
                    case Method::tm: model = fit_tm(train, cfg.tm_config()); break;
                    case Method::tm_simple: model = fit_tm_simple(train, cfg.solver); break;
                    case Method::joint: model = fit_joint(train, cfg.fit_config()); break;
                    case Method::em: model = fit_em(train, cfg.fit_config()); break;
                    case Method::lbe: model = fit_lbe(train, cfg.fit_config()); break;
                    case Method::oracle:
                        model = oracle_model ? *oracle_model
                                             : fit_oracle(Dataset{X_train, Y_train, {}}, cfg.solver);
                        break;
                }
                const VectorXd probs = predict_posterior(model, X_test);
                out[mi].accuracy = accuracy(classify(probs), Y_test);
                out[mi].ae = approximation_error(probs, ref_probs);
            } catch (const std::exception& e) {
                out[mi].failed = true;
                out[mi].error = e.what();
            }
        }
    } catch (const std::exception& e) {
        for (auto& o : out) {
            o.failed = true;
            o.error = e.what();
        }
    }
    return out;
}

inline std::pair<double, double> mean_and_se(const std::vector<double>& v) {
    if (v.empty()) return {std::nan(""), std::nan("")};
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    if (v.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace detail

struct SweepPoint {
    double value = 0.0;
    double accuracy_mean = 0.0;
    double accuracy_se = 0.0;
    double ae_mean = 0.0;
    double ae_se = 0.0;
};

// Per-sweep-point summary of one method's non-failed records.
inline std::vector<SweepPoint> sweep_summary(const EvalReport& report, const std::string& method) {
    std::vector<double> values;
    for (const auto& r : report.records) {
        const bool seen = std::any_of(values.begin(), values.end(), [&](double v) {
            return v == r.scenario_param || (std::isnan(v) && std::isnan(r.scenario_param));
        });
        if (!seen) values.push_back(r.scenario_param);
    }
    std::vector<SweepPoint> out;
    for (double v : values) {
        std::vector<double> accs, aes;
        for (const auto& r : report.records) {
            const bool match = r.scenario_param == v || (std::isnan(v) && std::isnan(r.scenario_param));
            if (match && r.method == method && !r.failed) {
                accs.push_back(r.accuracy);
                aes.push_back(r.ae);
            }
        }
        SweepPoint pt;
        pt.value = v;
        std::tie(pt.accuracy_mean, pt.accuracy_se) = detail::mean_and_se(accs);
        std::tie(pt.ae_mean, pt.ae_se) = detail::mean_and_se(aes);
        out.push_back(pt);
    }
    return out;
}

// Execute the full protocol. The mapping (config, base_seed) -> report is a
// pure function: per-cell seeds are derived from (base_seed, sweep index,
// replication) and records are assembled in a fixed order.
inline EvalReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();

    std::optional<Dataset> csv_data;
    if (std::holds_alternative<CsvSource>(cfg.source))
        csv_data = detail::load_csv_source(std::get<CsvSource>(cfg.source));

    std::vector<double> sweep_values = cfg.sweep;
    if (sweep_values.empty()) sweep_values.push_back(cfg.scenario.sweep_value());

    const std::size_t n_sweep = sweep_values.size();
    const std::size_t n_cells = n_sweep * static_cast<std::size_t>(cfg.replications);
    std::vector<std::vector<detail::CellOutcome>> outcomes(n_cells);

    const unsigned n_threads = harness_thread_count(n_cells);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t cell = next.fetch_add(1); cell < n_cells; cell = next.fetch_add(1)) {
            const std::size_t sweep_idx = cell / static_cast<std::size_t>(cfg.replications);
            const int rep = static_cast<int>(cell % static_cast<std::size_t>(cfg.replications));
            const ScenarioSpec scenario = std::isnan(sweep_values[sweep_idx])
                                              ? cfg.scenario
                                              : cfg.scenario.with_sweep_value(sweep_values[sweep_idx]);
            outcomes[cell] = detail::run_cell(cfg, csv_data ? &*csv_data : nullptr, scenario,
                                              sweep_idx, rep);
        }
    };
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    EvalReport report;
    report.dataset_name = cfg.dataset_name();
    report.rng_algorithm = Rng::algorithm_name();
    for (Method m : cfg.methods) report.methods.push_back(method_name(m));

    for (std::size_t s = 0; s < n_sweep; ++s)
        for (int r = 0; r < cfg.replications; ++r)
            for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
                const auto& o = outcomes[s * static_cast<std::size_t>(cfg.replications) +
                                         static_cast<std::size_t>(r)][mi];
                MetricRecord rec;
                rec.method = report.methods[mi];
                rec.scenario_param = sweep_values[s];
                rec.replication = r;
                rec.accuracy = o.accuracy;
                rec.ae = o.ae;
                rec.failed = o.failed;
                rec.error = o.error;
                report.records.push_back(std::move(rec));
            }

    // Per-replication values averaged over the sweep grid; the tables'
    // mean +/- SE aggregates over those replication values.
    std::map<std::string, std::vector<double>> acc_samples, ae_samples;
    for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
        const std::string& name = report.methods[mi];
        MethodAggregate agg;
        std::vector<double> rep_acc, rep_ae;
        for (int r = 0; r < cfg.replications; ++r) {
            std::vector<double> accs, aes;
            for (std::size_t s = 0; s < n_sweep; ++s) {
                const auto& o = outcomes[s * static_cast<std::size_t>(cfg.replications) +
                                         static_cast<std::size_t>(r)][mi];
                if (o.failed) {
                    ++agg.failures;
                    continue;
                }
                accs.push_back(o.accuracy);
                aes.push_back(o.ae);
            }
            if (!accs.empty()) {
                rep_acc.push_back(detail::mean_and_se(accs).first);
                rep_ae.push_back(detail::mean_and_se(aes).first);
            }
        }
        std::tie(agg.accuracy_mean, agg.accuracy_se) = detail::mean_and_se(rep_acc);
        std::tie(agg.ae_mean, agg.ae_se) = detail::mean_and_se(rep_ae);
        report.aggregates[name] = agg;
        acc_samples[name] = std::move(rep_acc);
        ae_samples[name] = std::move(rep_ae);
    }

    // Ranks across the methods of this run (1 = best).
    {
        MatrixXd acc_row(1, static_cast<Eigen::Index>(report.methods.size()));
        MatrixXd ae_row(1, static_cast<Eigen::Index>(report.methods.size()));
        bool finite = true;
        for (std::size_t mi = 0; mi < report.methods.size(); ++mi) {
            const auto& a = report.aggregates[report.methods[mi]];
            acc_row(0, static_cast<Eigen::Index>(mi)) = a.accuracy_mean;
            ae_row(0, static_cast<Eigen::Index>(mi)) = a.ae_mean;
            finite = finite && std::isfinite(a.accuracy_mean) && std::isfinite(a.ae_mean);
        }
        if (finite) {
            const VectorXd racc = average_ranks(acc_row, true);
            const VectorXd rae = average_ranks(ae_row, false);
            for (std::size_t mi = 0; mi < report.methods.size(); ++mi) {
                report.aggregates[report.methods[mi]].avg_rank_accuracy =
                    racc(static_cast<Eigen::Index>(mi));
                report.aggregates[report.methods[mi]].avg_rank_ae = rae(static_cast<Eigen::Index>(mi));
            }
        }
    }

    // Winner-vs-runner-up significance per metric.
    auto winner_pvalue = [&](const std::map<std::string, std::vector<double>>& samples,
                             bool higher_is_better) {
        std::vector<std::pair<double, std::string>> order;
        for (const auto& name : report.methods) {
            const auto& v = samples.at(name);
            if (v.size() >= 2) order.emplace_back(detail::mean_and_se(v).first, name);
        }
        if (order.size() < 2) return 1.0;
        std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
            return higher_is_better ? a.first > b.first : a.first < b.first;
        });
        return welch_t_test(samples.at(order[0].second), samples.at(order[1].second));
    };
    report.winner_pvalue_accuracy = winner_pvalue(acc_samples, true);
    report.winner_pvalue_ae = winner_pvalue(ae_samples, false);
    return report;
}

inline Json to_json(const ExperimentConfig& cfg) {
    Json src;
    if (std::holds_alternative<ArtifSource>(cfg.source)) {
        const auto& spec = std::get<ArtifSource>(cfg.source).spec;
        src = Json{{"type", "artif"},
                   {"n", static_cast<long long>(spec.n)},
                   {"p", static_cast<long long>(spec.p)},
                   {"link", link_name(spec.link)}};
        if (spec.beta_star.dim() != 0) src["beta_star"] = to_json(spec.beta_star);
    } else {
        const auto& csv = std::get<CsvSource>(cfg.source);
        src = Json{{"type", "csv"}, {"path", csv.path}, {"label_column", csv.label_column}};
        if (!csv.ignore_columns.empty()) src["ignore_columns"] = csv.ignore_columns;
    }
    std::vector<std::string> method_names;
    for (Method m : cfg.methods) method_names.push_back(method_name(m));
    return Json{
        {"data_source", src},
        {"scenario", to_json(cfg.scenario)},
        {"sweep", cfg.sweep},
        {"methods", method_names},
        {"replications", cfg.replications},
        {"train_fraction", cfg.train_fraction},
        {"base_seed", cfg.base_seed},
        {"solver", Json{{"rel_tol", cfg.solver.rel_tol},
                        {"max_iter", cfg.solver.max_iter},
                        {"ridge", cfg.solver.ridge},
                        {"max_backtracks", cfg.solver.max_backtracks}}},
        {"outer", Json{{"rel_tol", cfg.outer.rel_tol}, {"max_iter", cfg.outer.max_iter}}},
        {"tm",
         Json{{"alpha_rule",
               cfg.alpha_rule == TMConfig::AlphaRule::fraction_labelled ? "fraction_labelled" : "fixed"},
              {"alpha", cfg.alpha},
              {"strict_threshold", cfg.strict_threshold}}},
        {"output_dir", cfg.output_dir}};
}

inline ExperimentConfig config_from_json(const Json& j) {
    ExperimentConfig cfg;
    const Json& src = j.at("data_source");
    const std::string type = src.at("type").get<std::string>();
    if (type == "artif") {
        ArtifSource a;
        a.spec.n = src.at("n").get<long long>();
        a.spec.p = src.at("p").get<long long>();
        if (src.contains("link")) a.spec.link = link_from_name(src.at("link").get<std::string>());
        if (src.contains("beta_star")) a.spec.beta_star = linear_params_from_json(src.at("beta_star"));
        cfg.source = a;
    } else if (type == "csv") {
        CsvSource c;
        c.path = src.at("path").get<std::string>();
        c.label_column = src.at("label_column").get<std::string>();
        if (src.contains("ignore_columns"))
            c.ignore_columns = src.at("ignore_columns").get<std::vector<std::string>>();
        cfg.source = c;
    } else {
        throw std::invalid_argument("config: unknown data_source type " + type);
    }
    cfg.scenario = scenario_from_json(j.at("scenario"));
    if (j.contains("sweep")) cfg.sweep = j.at("sweep").get<std::vector<double>>();
    cfg.methods.clear();
    for (const auto& name : j.at("methods")) cfg.methods.push_back(method_from_name(name.get<std::string>()));
    if (j.contains("replications")) cfg.replications = j.at("replications").get<int>();
    if (j.contains("train_fraction")) cfg.train_fraction = j.at("train_fraction").get<double>();
    if (j.contains("base_seed")) cfg.base_seed = j.at("base_seed").get<std::uint64_t>();
    if (j.contains("solver")) {
        const Json& s = j.at("solver");
        if (s.contains("rel_tol")) cfg.solver.rel_tol = s.at("rel_tol").get<double>();
        if (s.contains("max_iter")) cfg.solver.max_iter = s.at("max_iter").get<int>();
        if (s.contains("ridge")) cfg.solver.ridge = s.at("ridge").get<double>();
        if (s.contains("max_backtracks")) cfg.solver.max_backtracks = s.at("max_backtracks").get<int>();
    }
    if (j.contains("outer")) {
        const Json& s = j.at("outer");
        if (s.contains("rel_tol")) cfg.outer.rel_tol = s.at("rel_tol").get<double>();
        if (s.contains("max_iter")) cfg.outer.max_iter = s.at("max_iter").get<int>();
    }
    if (j.contains("tm")) {
        const Json& t = j.at("tm");
        if (t.contains("alpha_rule"))
            cfg.alpha_rule = t.at("alpha_rule").get<std::string>() == "fixed"
                                 ? TMConfig::AlphaRule::fixed
                                 : TMConfig::AlphaRule::fraction_labelled;
        if (t.contains("alpha")) cfg.alpha = t.at("alpha").get<double>();
        if (t.contains("strict_threshold")) cfg.strict_threshold = t.at("strict_threshold").get<bool>();
    }
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
    return cfg;
}

inline std::string iso8601_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

// Full report envelope: resolved config (every default made explicit), the
// report, schema version and a timestamp.
inline Json experiment_report_json(const ExperimentConfig& cfg, const EvalReport& report) {
    return Json{{"schema_version", kReportSchemaVersion},
                {"generated_at", iso8601_now()},
                {"config", to_json(cfg)},
                {"report", to_json(report)}};
}

namespace detail {

inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("emit_report: cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

inline std::string format_mean_se(double mean, double se) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f \xC2\xB1 %.3f", mean, se);
    return buf;
}

// Benchmark table shape: methods as columns, one dataset row of mean +/- SE, a
// p-value column and a final avg. rank row.
inline std::string metric_table_csv(const EvalReport& rep, bool use_accuracy) {
    std::string out = "dataset";
    for (const auto& m : rep.methods) out += "," + m;
    out += ",p-value\n";
    out += rep.dataset_name;
    for (const auto& m : rep.methods) {
        const auto& a = rep.aggregates.at(m);
        out += "," + (use_accuracy ? format_mean_se(a.accuracy_mean, a.accuracy_se)
                                   : format_mean_se(a.ae_mean, a.ae_se));
    }
    char pbuf[32];
    std::snprintf(pbuf, sizeof pbuf, "%.4g",
                  use_accuracy ? rep.winner_pvalue_accuracy : rep.winner_pvalue_ae);
    out += std::string(",") + pbuf + "\n";
    out += "avg. rank";
    for (const auto& m : rep.methods) {
        const auto& a = rep.aggregates.at(m);
        char rbuf[32];
        std::snprintf(rbuf, sizeof rbuf, "%.1f", use_accuracy ? a.avg_rank_accuracy : a.avg_rank_ae);
        out += std::string(",") + rbuf;
    }
    out += ",\n";
    return out;
}

// Long-format per-sweep-point series for plotting: one row per
// (method, sweep value, metric).
inline std::string plotdata_csv(const EvalReport& rep) {
    std::string out = "method,sweep_value,metric,mean,se\n";
    char buf[160];
    for (const auto& m : rep.methods) {
        for (const auto& pt : sweep_summary(rep, m)) {
            std::snprintf(buf, sizeof buf, "%s,%.17g,accuracy,%.17g,%.17g\n", m.c_str(), pt.value,
                          pt.accuracy_mean, pt.accuracy_se);
            out += buf;
            std::snprintf(buf, sizeof buf, "%s,%.17g,ae,%.17g,%.17g\n", m.c_str(), pt.value,
                          pt.ae_mean, pt.ae_se);
            out += buf;
        }
    }
    return out;
}

}  // namespace detail

enum class ReportFormat { json, csv, plotdata };

// Write the requested formats into output_dir (temp file + rename, so
// readers never observe partial files). Returns the paths written.
inline std::vector<std::string> emit_report(const ExperimentConfig& cfg, const EvalReport& report,
                                            const std::vector<ReportFormat>& formats) {
    namespace fs = std::filesystem;
    const fs::path dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!fs::is_directory(dir))
        throw std::runtime_error("emit_report: cannot create output dir " + dir.string());

    std::vector<std::string> written;
    for (ReportFormat f : formats) {
        switch (f) {
            case ReportFormat::json: {
                const fs::path p = dir / "report.json";
                detail::write_atomic(p, experiment_report_json(cfg, report).dump(2) + "\n");
                written.push_back(p.string());
                break;
            }
            case ReportFormat::csv: {
                const fs::path pa = dir / "accuracy_table.csv";
                detail::write_atomic(pa, detail::metric_table_csv(report, true));
                written.push_back(pa.string());
                const fs::path pe = dir / "ae_table.csv";
                detail::write_atomic(pe, detail::metric_table_csv(report, false));
                written.push_back(pe.string());
                break;
            }
            case ReportFormat::plotdata: {
                const fs::path p = dir / "plotdata.csv";
                detail::write_atomic(p, detail::plotdata_csv(report));
                written.push_back(p.string());
                break;
            }
        }
    }
    return written;
}

}  // namespace pulearn
