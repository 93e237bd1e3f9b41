#include "survboot/simstudy.hpp"

#include <atomic>
#include <cmath>
#include <istream>
#include <map>
#include <sstream>
#include <thread>

#include "survboot/errors.hpp"

namespace survboot {

namespace {

/// Validation seed shared by the full-data and approach pipelines of one
/// replicate, so a no-missingness scenario reproduces the full-data run
/// exactly.
std::uint64_t replicate_seed(std::uint64_t master_seed, int replicate) {
    SplitMix64 sm(master_seed ^
                  SplitMix64(std::uint64_t(replicate) + 0x51ED270B).next());
    return sm.next();
}

EstimatorSet minus(const EstimatorSet& a, const EstimatorSet& b) {
    return {a.apparent - b.apparent, a.boot_corrected - b.boot_corrected,
            a.e632 - b.e632, a.e632plus - b.e632plus};
}

} // namespace

BiasRecord run_replicate(const ScenarioSpec& spec, int replicate_index) {
    BiasRecord rec;
    rec.n = spec.dgp.n;
    rec.pattern = spec.pattern;
    rec.strategy = to_string(spec.strategy);
    rec.approach = to_string(spec.approach);
    rec.replicate = replicate_index;

    RngStream base(spec.master_seed, std::uint64_t(replicate_index));
    RngStream gen_rng = base.child(0);
    RngStream miss_rng = base.child(1);
    const std::uint64_t vseed =
        replicate_seed(spec.master_seed, replicate_index);

    const SurvivalDataset complete = generate_dataset(spec.dgp, gen_rng);

    SurvivalDataset raw = complete;
    std::vector<Eigen::Index> targets, predictors;
    if (spec.pattern != "none") {
        const MissingPattern pat = pattern_catalog().at(spec.pattern);
        raw = impose_missingness(complete, pat, miss_rng);
        targets = pat.targets();
        predictors = pat.complete_columns(complete.n_cov());
    }

    ValidationConfig truth_cfg;
    truth_cfg.n_boot = spec.n_boot;
    truth_cfg.horizon = spec.horizon;
    truth_cfg.approach = Approach::BI;
    truth_cfg.seed = vseed;

    ValidationConfig approach_cfg = truth_cfg;
    approach_cfg.strategy = spec.strategy;
    approach_cfg.approach = spec.approach;
    approach_cfg.targets = targets;
    approach_cfg.predictors = predictors;

    try {
        const ValidationResult truth = validate(complete, truth_cfg);
        const ValidationResult approach = validate(raw, approach_cfg);

        rec.full_boot_failures = truth.report.boot_failures;
        rec.approach_boot_failures = approach.report.boot_failures;
        rec.full_auc = truth.report.auc;
        rec.full_brier = truth.report.brier;
        rec.approach_auc = approach.report.auc;
        rec.approach_brier = approach.report.brier;
        rec.bias_auc = minus(rec.full_auc, rec.approach_auc);
        rec.bias_brier = minus(rec.full_brier, rec.approach_brier);

        // Individual prediction bias over the subjects the approach can
        // predict for (complete rows after CC deletion / imputation).
        const Eigen::VectorXd full_risk =
            predict_risk(truth.apparent_fit, complete.x, spec.horizon);
        const Eigen::VectorXd appr_risk =
            predict_risk(approach.apparent_fit, approach.dat.x, spec.horizon);
        double total = 0.0;
        for (Eigen::Index i : approach.usable_rows)
            total += full_risk(i) - appr_risk(i);
        rec.n_pred = Eigen::Index(approach.usable_rows.size());
        rec.pred_bias = rec.n_pred > 0 ? total / double(rec.n_pred) : 0.0;
        rec.fit_ok = true;
    } catch (const Error&) {
        rec.fit_ok = false;
    }
    return rec;
}

std::vector<BiasRecord> run_grid(const std::vector<ScenarioSpec>& specs,
                                 int jobs) {
    struct Task {
        std::size_t spec_index;
        int replicate;
    };
    std::vector<Task> tasks;
    for (std::size_t si = 0; si < specs.size(); ++si)
        for (int r = 0; r < specs[si].n_sims; ++r) tasks.push_back({si, r});

    std::vector<BiasRecord> records(tasks.size());
    if (jobs <= 1) {
        for (std::size_t t = 0; t < tasks.size(); ++t)
            records[t] =
                run_replicate(specs[tasks[t].spec_index], tasks[t].replicate);
        return records;
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= tasks.size()) break;
            records[t] =
                run_replicate(specs[tasks[t].spec_index], tasks[t].replicate);
        }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return records;
}

namespace {

struct Moments {
    int n = 0;
    double sum = 0.0;
    double sumsq = 0.0;
    void add(double v) {
        ++n;
        sum += v;
        sumsq += v * v;
    }
    double mean() const { return n > 0 ? sum / n : 0.0; }
    double sd() const {
        if (n < 2) return 0.0;
        const double m = mean();
        return std::sqrt(std::max(0.0, (sumsq - n * m * m) / (n - 1)));
    }
};

struct EstimatorMoments {
    Moments apparent, boot_corrected, e632, e632plus;
    void add(const EstimatorSet& e) {
        apparent.add(e.apparent);
        boot_corrected.add(e.boot_corrected);
        e632.add(e.e632);
        e632plus.add(e.e632plus);
    }
    EstimatorSet means() const {
        return {apparent.mean(), boot_corrected.mean(), e632.mean(),
                e632plus.mean()};
    }
    EstimatorSet sds() const {
        return {apparent.sd(), boot_corrected.sd(), e632.sd(), e632plus.sd()};
    }
};

} // namespace

std::vector<ScenarioSummary> summarize(const std::vector<BiasRecord>& records) {
    struct Acc {
        ScenarioSummary out;
        EstimatorMoments auc, brier;
        Moments pred;
    };
    std::vector<std::string> order;
    std::map<std::string, Acc> groups;
    for (const auto& r : records) {
        const std::string key = std::to_string(r.n) + '|' + r.pattern + '|' +
                                r.strategy + '|' + r.approach;
        auto it = groups.find(key);
        if (it == groups.end()) {
            order.push_back(key);
            Acc a;
            a.out.n = r.n;
            a.out.pattern = r.pattern;
            a.out.strategy = r.strategy;
            a.out.approach = r.approach;
            it = groups.emplace(key, std::move(a)).first;
        }
        Acc& a = it->second;
        ++a.out.n_records;
        if (r.fit_ok) {
            ++a.out.n_fit_ok;
            a.auc.add(r.bias_auc);
            a.brier.add(r.bias_brier);
            a.pred.add(r.pred_bias);
        }
    }

    std::vector<ScenarioSummary> out;
    for (const auto& key : order) {
        Acc& a = groups.at(key);
        a.out.failure_rate =
            a.out.n_records > 0
                ? double(a.out.n_records - a.out.n_fit_ok) / a.out.n_records
                : 0.0;
        a.out.mean_bias_auc = a.auc.means();
        a.out.sd_bias_auc = a.auc.sds();
        a.out.mean_bias_brier = a.brier.means();
        a.out.sd_bias_brier = a.brier.sds();
        a.out.mean_pred_bias = a.pred.mean();
        a.out.sd_pred_bias = a.pred.sd();
        out.push_back(a.out);
    }
    return out;
}

namespace {

void append_set(std::ostringstream& os, const EstimatorSet& e) {
    os << ',' << format_double(e.apparent) << ','
       << format_double(e.boot_corrected) << ',' << format_double(e.e632)
       << ',' << format_double(e.e632plus);
}

const char* kSetCols[] = {"apparent", "boot", "632", "632plus"};

} // namespace

std::string bias_csv_header() {
    std::ostringstream os;
    os << "n,pattern,strategy,approach,replicate,fit_ok,"
          "full_boot_failures,approach_boot_failures";
    for (const char* metric : {"auc", "brier"})
        for (const char* kind : {"full", "approach", "bias"})
            for (const char* col : kSetCols)
                os << ',' << kind << '_' << metric << '_' << col;
    os << ",pred_bias,n_pred";
    return os.str();
}

std::string bias_csv_row(const BiasRecord& r) {
    std::ostringstream os;
    os << r.n << ',' << r.pattern << ',' << r.strategy << ',' << r.approach
       << ',' << r.replicate << ',' << (r.fit_ok ? 1 : 0) << ','
       << r.full_boot_failures << ',' << r.approach_boot_failures;
    append_set(os, r.full_auc);
    append_set(os, r.approach_auc);
    append_set(os, r.bias_auc);
    append_set(os, r.full_brier);
    append_set(os, r.approach_brier);
    append_set(os, r.bias_brier);
    os << ',' << format_double(r.pred_bias) << ',' << r.n_pred;
    return os.str();
}

std::vector<BiasRecord> read_bias_csv(std::istream& is) {
    std::string line;
    bool have_header = false;
    std::vector<BiasRecord> out;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> f;
        {
            std::string cur;
            for (char c : line) {
                if (c == ',') {
                    f.push_back(cur);
                    cur.clear();
                } else if (c != '\r') {
                    cur.push_back(c);
                }
            }
            f.push_back(cur);
        }
        if (!have_header) {
            if (f.empty() || f[0] != "n")
                throw Error("bias CSV: unexpected header");
            have_header = true;
            continue;
        }
        if (f.size() != 34)
            throw Error("bias CSV: bad field count on line: " + line);
        BiasRecord r;
        std::size_t k = 0;
        r.n = std::stol(f[k++]);
        r.pattern = f[k++];
        r.strategy = f[k++];
        r.approach = f[k++];
        r.replicate = std::stoi(f[k++]);
        r.fit_ok = f[k++] == "1";
        r.full_boot_failures = std::stoi(f[k++]);
        r.approach_boot_failures = std::stoi(f[k++]);
        auto read_set = [&]() {
            EstimatorSet e;
            e.apparent = std::stod(f[k++]);
            e.boot_corrected = std::stod(f[k++]);
            e.e632 = std::stod(f[k++]);
            e.e632plus = std::stod(f[k++]);
            return e;
        };
        r.full_auc = read_set();
        r.approach_auc = read_set();
        r.bias_auc = read_set();
        r.full_brier = read_set();
        r.approach_brier = read_set();
        r.bias_brier = read_set();
        r.pred_bias = std::stod(f[k++]);
        r.n_pred = std::stol(f[k++]);
        out.push_back(std::move(r));
    }
    return out;
}

std::string summary_csv_header() {
    std::ostringstream os;
    os << "n,pattern,strategy,approach,n_records,n_fit_ok,failure_rate";
    for (const char* metric : {"auc", "brier"})
        for (const char* stat : {"mean", "sd"})
            for (const char* col : kSetCols)
                os << ',' << stat << "_bias_" << metric << '_' << col;
    os << ",mean_pred_bias,sd_pred_bias";
    return os.str();
}

std::string summary_csv_row(const ScenarioSummary& s) {
    std::ostringstream os;
    os << s.n << ',' << s.pattern << ',' << s.strategy << ',' << s.approach
       << ',' << s.n_records << ',' << s.n_fit_ok << ','
       << format_double(s.failure_rate);
    append_set(os, s.mean_bias_auc);
    append_set(os, s.sd_bias_auc);
    append_set(os, s.mean_bias_brier);
    append_set(os, s.sd_bias_brier);
    os << ',' << format_double(s.mean_pred_bias) << ','
       << format_double(s.sd_pred_bias);
    return os.str();
}

} // namespace survboot
