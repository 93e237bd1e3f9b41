// Command-line front end: simulate | validate | simstudy | summarize.
//
// Exit codes: 0 success, 1 analysis failure, 2 usage/config error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "survboot/datagen.hpp"
#include "survboot/errors.hpp"
#include "survboot/simstudy.hpp"
#include "survboot/validation.hpp"

namespace {

using namespace survboot;

constexpr int kExitOk = 0;
constexpr int kExitAnalysis = 1;
constexpr int kExitConfig = 2;

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Every run echoes its fully-resolved configuration into the output
/// header so results are reproducible from the file alone.
void write_config_header(std::ostream& os, const std::string& subcommand,
                         const KeyValues& kv) {
    os << "# survboot " << subcommand << "\n";
    for (const auto& [k, v] : kv) os << "# " << k << "=" << v << "\n";
}

struct Output {
    std::ofstream file;
    bool to_stdout = false;
    std::ostream& stream() { return to_stdout ? std::cout : file; }
};

Output open_output(const std::string& path, bool to_stdout) {
    Output out;
    out.to_stdout = to_stdout;
    if (!to_stdout) {
        out.file.open(path);
        if (!out.file) throw Error("cannot open output file: " + path);
    }
    return out;
}

ImputationStrategy parse_strategy(const std::string& name, double threshold,
                                  long max_missing) {
    if (name == "all") return ImputationStrategy::all();
    if (name == "high-missing")
        return ImputationStrategy::only_high_missing(threshold);
    if (name == "few-missing")
        return ImputationStrategy::only_few_missing(max_missing);
    throw CLI::ValidationError("--strategy", "unknown strategy: " + name);
}

Approach parse_approach(const std::string& name) {
    if (name == "BI") return Approach::BI;
    if (name == "CC") return Approach::CC;
    throw CLI::ValidationError("--approach", "unknown approach: " + name);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, ',')) out.push_back(cur);
    return out;
}

int cmd_simulate(Eigen::Index n, const std::string& pattern,
                 std::uint64_t seed, const std::string& out_path,
                 bool to_stdout) {
    DgpConfig cfg = DgpConfig::defaults();
    cfg.n = n;

    RngStream base(seed, 0);
    RngStream gen_rng = base.child(0);
    RngStream miss_rng = base.child(1);

    SurvivalDataset data = generate_dataset(cfg, gen_rng);
    if (pattern != "none") {
        const auto catalog = pattern_catalog();
        const auto it = catalog.find(pattern);
        if (it == catalog.end()) {
            std::cerr << "survboot: unknown pattern: " << pattern << "\n";
            return kExitConfig;
        }
        data = impose_missingness(data, it->second, miss_rng);
    }

    Output out = open_output(out_path, to_stdout);
    write_config_header(out.stream(), "simulate",
                        {{"n", std::to_string(n)},
                         {"pattern", pattern},
                         {"seed", std::to_string(seed)}});
    write_csv(data, out.stream());
    std::cerr << "survboot: wrote " << data.n() << " subjects\n";
    return kExitOk;
}

int cmd_validate(const std::string& data_path, const std::string& approach,
                 const std::string& strategy, double threshold,
                 long max_missing, int n_boot, double horizon,
                 std::uint64_t seed, const std::string& out_path,
                 bool to_stdout) {
    const SurvivalDataset raw = read_csv_file(data_path);

    ValidationConfig cfg;
    cfg.n_boot = n_boot;
    cfg.horizon = horizon;
    cfg.seed = seed;
    cfg.approach = parse_approach(approach);
    cfg.strategy = parse_strategy(strategy, threshold, max_missing);
    cfg.targets = infer_targets(raw);
    cfg.predictors = infer_complete_columns(raw);

    const ValidationResult result = validate(raw, cfg);
    const ValidationReport& r = result.report;

    Output out = open_output(out_path, to_stdout);
    write_config_header(out.stream(), "validate",
                        {{"data", data_path},
                         {"approach", approach},
                         {"strategy", strategy},
                         {"n_boot", std::to_string(n_boot)},
                         {"horizon", format_double(horizon)},
                         {"seed", std::to_string(seed)}});
    out.stream() << report_csv_header() << "\n"
                 << report_csv_row(cfg.approach, cfg.strategy, r) << "\n";

    std::cerr << "approach " << approach << ", strategy " << strategy << ", "
              << r.n_boot_used << "/" << n_boot << " bootstraps used ("
              << r.boot_failures << " failed)\n"
              << "  AUC   apparent=" << r.auc.apparent
              << " boot=" << r.auc.boot_corrected << " .632=" << r.auc.e632
              << " .632+=" << r.auc.e632plus << "\n"
              << "  Brier apparent=" << r.brier.apparent
              << " boot=" << r.brier.boot_corrected << " .632=" << r.brier.e632
              << " .632+=" << r.brier.e632plus << "\n";
    return kExitOk;
}

int cmd_simstudy(const std::string& ns, const std::string& patterns,
                 const std::string& strategies, const std::string& approaches,
                 int n_sims, int n_boot, double horizon, std::uint64_t seed,
                 int jobs, const std::string& out_path, bool to_stdout) {
    std::vector<ScenarioSpec> specs;
    for (const auto& n_str : split_list(ns))
        for (const auto& pat : split_list(patterns))
            for (const auto& strat : split_list(strategies))
                for (const auto& appr : split_list(approaches)) {
                    ScenarioSpec s;
                    s.dgp = DgpConfig::defaults();
                    s.dgp.n = std::stol(n_str);
                    s.pattern = pat;
                    s.strategy = parse_strategy(strat, 0.10, 2);
                    s.approach = parse_approach(appr);
                    s.n_sims = n_sims;
                    s.n_boot = n_boot;
                    s.horizon = horizon;
                    s.master_seed = seed;
                    specs.push_back(std::move(s));
                }
    if (specs.empty()) {
        std::cerr << "survboot: empty scenario grid\n";
        return kExitConfig;
    }
    if (specs[0].pattern != "none") {
        const auto catalog = pattern_catalog();
        for (const auto& s : specs)
            if (s.pattern != "none" && !catalog.count(s.pattern)) {
                std::cerr << "survboot: unknown pattern: " << s.pattern << "\n";
                return kExitConfig;
            }
    }

    std::cerr << "survboot: running " << specs.size() << " scenario(s) x "
              << n_sims << " replicate(s), " << n_boot << " bootstraps, jobs="
              << jobs << "\n";
    const std::vector<BiasRecord> records = run_grid(specs, jobs);

    Output out = open_output(out_path, to_stdout);
    write_config_header(out.stream(), "simstudy",
                        {{"n", ns},
                         {"patterns", patterns},
                         {"strategies", strategies},
                         {"approaches", approaches},
                         {"n_sims", std::to_string(n_sims)},
                         {"n_boot", std::to_string(n_boot)},
                         {"horizon", format_double(horizon)},
                         {"seed", std::to_string(seed)}});
    out.stream() << bias_csv_header() << "\n";
    for (const auto& r : records) out.stream() << bias_csv_row(r) << "\n";
    std::cerr << "survboot: wrote " << records.size() << " records\n";
    return kExitOk;
}

int cmd_summarize(const std::string& in_path, const std::string& out_path,
                  bool to_stdout) {
    std::ifstream in(in_path);
    if (!in) {
        std::cerr << "survboot: cannot open: " << in_path << "\n";
        return kExitConfig;
    }
    const std::vector<BiasRecord> records = read_bias_csv(in);
    if (records.empty()) {
        std::cerr << "survboot: no records in " << in_path << "\n";
        return kExitConfig;
    }
    const auto summaries = summarize(records);

    Output out = open_output(out_path, to_stdout);
    write_config_header(out.stream(), "summarize", {{"in", in_path}});
    out.stream() << summary_csv_header() << "\n";
    for (const auto& s : summaries) out.stream() << summary_csv_row(s) << "\n";
    std::cerr << "survboot: " << summaries.size() << " scenario summaries\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Survival risk model development and internal validation "
                 "under missing covariate data"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "Key=value config file; subcommand options go in a\n"
                   "[subcommand] section. Flags override the file.");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Generate a synthetic dataset");
    Eigen::Index sim_n = 3500;
    std::string sim_pattern = "none";
    std::uint64_t sim_seed = 0;
    std::string sim_out = "dataset.csv";
    bool sim_stdout = false;
    sim->add_option("--n", sim_n, "Subject count");
    sim->add_option("--pattern", sim_pattern, "Missing pattern A..I, or none");
    sim->add_option("--seed", sim_seed, "Master seed")->envname("BIV_SEED");
    sim->add_option("--out", sim_out, "Output CSV path");
    sim->add_flag("--stdout", sim_stdout, "Write results to standard output");

    // validate
    auto* val = app.add_subcommand("validate", "Bootstrap internal validation");
    std::string val_data, val_approach = "BI", val_strategy = "all";
    double val_threshold = 0.10, val_horizon = 5.0;
    long val_max_missing = 2;
    int val_nboot = 500;
    std::uint64_t val_seed = 0;
    std::string val_out = "report.csv";
    bool val_stdout = false;
    val->add_option("--data", val_data, "Dataset CSV")->required();
    val->add_option("--approach", val_approach, "BI or CC");
    val->add_option("--strategy", val_strategy,
                    "all | high-missing | few-missing");
    val->add_option("--threshold", val_threshold,
                    "high-missing proportion threshold");
    val->add_option("--max-missing", val_max_missing,
                    "few-missing per-subject cap");
    val->add_option("--n-boot", val_nboot, "Bootstrap samples");
    val->add_option("--horizon", val_horizon, "Prediction horizon (years)");
    val->add_option("--seed", val_seed, "Master seed")->envname("BIV_SEED");
    val->add_option("--out", val_out, "Output CSV path");
    val->add_flag("--stdout", val_stdout, "Write results to standard output");

    // simstudy
    auto* study = app.add_subcommand("simstudy", "Bias simulation grid");
    std::string st_n = "3500", st_patterns = "E", st_strategies = "all",
                st_approaches = "BI,CC";
    int st_nsims = 50, st_nboot = 100, st_jobs = 1;
    double st_horizon = 5.0;
    std::uint64_t st_seed = 0;
    std::string st_out = "bias.csv";
    bool st_stdout = false;
    study->add_option("--n", st_n, "Sample sizes, comma separated");
    study->add_option("--patterns", st_patterns, "Patterns, comma separated");
    study->add_option("--strategies", st_strategies,
                      "Strategies, comma separated");
    study->add_option("--approaches", st_approaches,
                      "Approaches, comma separated");
    study->add_option("--n-sims", st_nsims, "Replicates per scenario");
    study->add_option("--n-boot", st_nboot, "Bootstraps per validation");
    study->add_option("--horizon", st_horizon, "Prediction horizon (years)");
    study->add_option("--seed", st_seed, "Master seed")->envname("BIV_SEED");
    study->add_option("--jobs", st_jobs, "Worker threads");
    study->add_option("--out", st_out, "Output CSV path");
    study->add_flag("--stdout", st_stdout, "Write results to standard output");

    // summarize
    auto* summ = app.add_subcommand("summarize", "Summarize a bias CSV");
    std::string sm_in, sm_out = "summary.csv";
    bool sm_stdout = false;
    summ->add_option("--in", sm_in, "Bias CSV from simstudy")->required();
    summ->add_option("--out", sm_out, "Output CSV path");
    summ->add_flag("--stdout", sm_stdout, "Write results to standard output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (sim->parsed())
            return cmd_simulate(sim_n, sim_pattern, sim_seed, sim_out,
                                sim_stdout);
        if (val->parsed())
            return cmd_validate(val_data, val_approach, val_strategy,
                                val_threshold, val_max_missing, val_nboot,
                                val_horizon, val_seed, val_out, val_stdout);
        if (study->parsed())
            return cmd_simstudy(st_n, st_patterns, st_strategies,
                                st_approaches, st_nsims, st_nboot, st_horizon,
                                st_seed, st_jobs, st_out, st_stdout);
        if (summ->parsed()) return cmd_summarize(sm_in, sm_out, sm_stdout);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "survboot: " << e.what() << "\n";
        return kExitConfig;
    } catch (const AnalysisModelFailure& e) {
        std::cerr << "survboot: analysis failure: " << e.what() << "\n";
        return kExitAnalysis;
    } catch (const AllBootstrapsFailed& e) {
        std::cerr << "survboot: analysis failure: " << e.what() << "\n";
        return kExitAnalysis;
    } catch (const Error& e) {
        std::cerr << "survboot: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
