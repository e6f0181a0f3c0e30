// pulearn command line: experiment runner plus one-shot fit / predict /
// simulate subcommands.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "pulearn/pulearn.hpp"

namespace {

pulearn::ScenarioSpec scenario_from_flags(const std::string& kind, double c, double g, long long k,
                                          double p_minus, double p_plus) {
    using pulearn::ScenarioSpec;
    if (kind == "scar" || kind == "scar_constant") return ScenarioSpec::scar(c);
    if (kind == "logistic" || kind == "logistic_propensity") return ScenarioSpec::logistic(g);
    if (kind == "product" || kind == "product_scaled") return ScenarioSpec::product(k, p_minus, p_plus);
    throw CLI::ValidationError("--scenario", "expected scar, logistic or product");
}

void print_report_summary(const pulearn::EvalReport& rep) {
    std::printf("dataset: %s\n", rep.dataset_name.c_str());
    std::printf("%-10s %18s %18s %9s %8s\n", "method", "accuracy (±se)", "AE (±se)", "rank", "fails");
    for (const auto& m : rep.methods) {
        const auto& a = rep.aggregates.at(m);
        std::printf("%-10s %10.3f ± %.3f %10.3f ± %.3f %9.1f %8d\n", m.c_str(), a.accuracy_mean,
                    a.accuracy_se, a.ae_mean, a.ae_se, a.avg_rank_accuracy, a.failures);
    }
    std::printf("winner p-value (accuracy): %.4g, (AE): %.4g\n", rep.winner_pvalue_accuracy,
                rep.winner_pvalue_ae);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"positive-unlabelled learning with instance-dependent propensity scores"};
    app.require_subcommand(1);

    // experiment
    auto* exp = app.add_subcommand("experiment", "run a config-driven experiment and emit reports");
    pulearn::ExperimentOptions exp_opt;
    std::string exp_outdir;
    exp->add_option("--config", exp_opt.config_path, "JSON experiment config")->required();
    exp->add_option("--out-dir", exp_outdir, "override the config's output_dir");

    // fit
    auto* fit = app.add_subcommand("fit", "fit one method on a CSV treated as PU data");
    pulearn::FitOptions fit_opt;
    fit->add_option("--method", fit_opt.method,
                    "naive | tm | tm_simple | joint | em | lbe | oracle")->required();
    fit->add_option("--data", fit_opt.data_path, "training CSV")->required();
    fit->add_option("--label", fit_opt.label_column, "label (S) column name or index")->required();
    fit->add_option("--ignore", fit_opt.ignore_columns, "columns to drop before fitting");
    fit->add_option("--out", fit_opt.out_path, "output model JSON");
    fit->add_option("--rel-tol", fit_opt.solver.rel_tol, "solver relative tolerance");
    fit->add_option("--max-iter", fit_opt.solver.max_iter, "solver iteration cap");

    // predict
    auto* pred = app.add_subcommand("predict", "score a CSV with a stored model");
    pulearn::PredictOptions pred_opt;
    pred->add_option("--model", pred_opt.model_path, "model JSON from fit")->required();
    pred->add_option("--data", pred_opt.data_path, "CSV to score")->required();
    pred->add_option("--ignore", pred_opt.ignore_columns, "columns to drop before scoring");
    pred->add_option("--out", pred_opt.out_path, "output probabilities CSV");

    // simulate
    auto* sim = app.add_subcommand("simulate", "generate an artificial PU dataset as CSV");
    pulearn::SimulateOptions sim_opt;
    std::string sim_kind = "scar";
    double sim_c = 0.5, sim_g = 0.5, sim_pminus = 0.2, sim_pplus = 0.6;
    long long sim_k = 1, sim_n = 2000, sim_p = 50;
    sim->add_option("--artif", sim_opt.artif, "1 = logistic response, 2 = cauchy response");
    sim->add_option("--n", sim_n, "rows");
    sim->add_option("--p", sim_p, "feature count");
    sim->add_option("--scenario", sim_kind, "scar | logistic | product");
    sim->add_option("--c", sim_c, "scenario 1 label frequency");
    sim->add_option("--g", sim_g, "scenario 2 slope parameter");
    sim->add_option("--k", sim_k, "scenario 3 coordinate count");
    sim->add_option("--p-minus", sim_pminus, "scenario 3 lower propensity");
    sim->add_option("--p-plus", sim_pplus, "scenario 3 upper propensity");
    sim->add_option("--seed", sim_opt.seed, "RNG seed");
    sim->add_option("--out", sim_opt.out_path, "output CSV")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*exp) {
            if (!exp_outdir.empty()) exp_opt.output_dir_override = exp_outdir;
            const pulearn::EvalReport rep = pulearn::experiment_command(exp_opt);
            print_report_summary(rep);
        } else if (*fit) {
            fit_opt.outer.rel_tol = fit_opt.solver.rel_tol;
            const pulearn::ModelFile mf = pulearn::fit_command(fit_opt);
            std::printf("wrote %s (%s, %d outer iterations, converged=%s)\n", fit_opt.out_path.c_str(),
                        pulearn::method_name(mf.model.method).c_str(), mf.model.outer_iterations,
                        mf.model.diagnostics.converged ? "yes" : "no");
        } else if (*pred) {
            const pulearn::Predictions p = pulearn::predict_command(pred_opt);
            std::printf("wrote %s (%lld rows%s)\n", pred_opt.out_path.c_str(),
                        static_cast<long long>(p.y_hat.size()), p.e_hat ? ", with e_hat" : "");
        } else if (*sim) {
            sim_opt.n = sim_n;
            sim_opt.p = sim_p;
            sim_opt.scenario = scenario_from_flags(sim_kind, sim_c, sim_g, sim_k, sim_pminus, sim_pplus);
            const pulearn::PUDataset pu = pulearn::simulate_command(sim_opt);
            std::printf("wrote %s (n=%lld, p=%lld, labelled=%lld)\n", sim_opt.out_path.c_str(),
                        static_cast<long long>(pu.n()), static_cast<long long>(pu.p()),
                        static_cast<long long>(pu.S.cast<long long>().sum()));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
