#include "shortcast/tune.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "shortcast/metrics.hpp"

namespace shortcast::tune {

using corpus::ShortageStatus;

TuneConfig SearchSpace::sample(Rng& rng) const {
    TuneConfig c;
    c.boost.num_rounds = static_cast<int>(rng.uniform_int(num_rounds.first, num_rounds.second));
    c.boost.learning_rate = rng.log_uniform(learning_rate.first, learning_rate.second);
    c.boost.max_depth = static_cast<int>(rng.uniform_int(max_depth.first, max_depth.second));
    c.boost.min_child_weight = rng.uniform(min_child_weight.first, min_child_weight.second);
    c.boost.reg_lambda = rng.log_uniform(reg_lambda.first, reg_lambda.second);
    c.boost.gamma = rng.uniform(gamma.first, gamma.second);
    c.boost.subsample_rows = rng.uniform(subsample_rows.first, subsample_rows.second);
    c.boost.colsample = rng.uniform(colsample.first, colsample.second);
    double hi = std::max(1.0, oversample_max);
    c.oversample_multiplier = rng.uniform(1.0, hi);
    return c;
}

double imbalance_ratio(std::span<const ShortageStatus> labels) {
    std::int64_t pos = 0, neg = 0;
    for (auto s : labels) (s == ShortageStatus::InShortage ? pos : neg)++;
    if (pos == 0 || neg == 0) throw ValidationError("imbalance_ratio: single-class labels");
    auto majority = std::max(pos, neg);
    auto minority = std::min(pos, neg);
    return static_cast<double>(majority) / static_cast<double>(minority);
}

std::vector<int> labels01(const DesignMatrix& matrix) {
    std::vector<int> out;
    out.reserve(matrix.labels.size());
    for (auto s : matrix.labels) out.push_back(corpus::status_to_int(s));
    return out;
}

std::vector<std::uint32_t> oversample_indices(std::span<const ShortageStatus> labels,
                                              double multiplier, Rng& rng) {
    if (multiplier < 1.0) throw ValidationError("oversample: multiplier must be >= 1");
    std::vector<std::uint32_t> minority_rows[2];
    for (std::uint32_t i = 0; i < labels.size(); ++i) {
        minority_rows[corpus::status_to_int(labels[i])].push_back(i);
    }
    if (minority_rows[0].empty() || minority_rows[1].empty()) {
        throw ValidationError("oversample: single-class input");
    }
    // Tie goes to InShortage, the pipeline's minority class.
    int minority = minority_rows[1].size() <= minority_rows[0].size() ? 1 : 0;
    const auto& rows = minority_rows[minority];
    auto original = static_cast<std::int64_t>(rows.size());
    auto target = std::llround(multiplier * static_cast<double>(original));

    std::vector<std::uint32_t> out(labels.size());
    for (std::uint32_t i = 0; i < labels.size(); ++i) out[i] = i;
    for (std::int64_t d = original; d < target; ++d) {
        out.push_back(rows[rng.below(rows.size())]);
    }
    return out;
}

DesignMatrix oversample(const DesignMatrix& matrix, double multiplier, std::uint64_t seed) {
    Rng rng(seed);
    auto idx = oversample_indices(matrix.labels, multiplier, rng);
    return matrix.select_rows(idx);
}

CvResult kfold_cv(const DesignMatrix& matrix, const TuneConfig& config, int k,
                  std::uint64_t seed) {
    const auto n = static_cast<std::int64_t>(matrix.rows());
    if (k < 2) throw ValidationError("kfold_cv: k must be >= 2");
    if (k > n) throw ValidationError("kfold_cv: k exceeds row count");

    std::vector<std::uint32_t> order(static_cast<std::size_t>(n));
    for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
    Rng shuffle_rng(derive_seed(seed, "cv.shuffle"));
    shuffle_rng.shuffle(order);

    CvResult result;
    result.config = config;

    std::int64_t base = n / k;
    std::int64_t extra = n % k;
    std::size_t start = 0;
    for (int f = 0; f < k; ++f) {
        std::size_t size = static_cast<std::size_t>(base + (f < extra ? 1 : 0));
        FoldAudit audit;
        audit.heldout_rows.assign(order.begin() + static_cast<std::ptrdiff_t>(start),
                                  order.begin() + static_cast<std::ptrdiff_t>(start + size));
        std::sort(audit.heldout_rows.begin(), audit.heldout_rows.end());
        std::vector<std::uint32_t> train_rows;
        train_rows.reserve(order.size() - size);
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (i < start || i >= start + size) train_rows.push_back(order[i]);
        }
        std::sort(train_rows.begin(), train_rows.end());
        start += size;

        DesignMatrix fold_train = matrix.select_rows(train_rows);
        bool has_pos = false, has_neg = false;
        for (auto s : fold_train.labels) (s == ShortageStatus::InShortage ? has_pos : has_neg) = true;
        if (!has_pos || !has_neg) {
            audit.skipped = true;
            audit.warning = "fold " + std::to_string(f) + " skipped: single-class training part";
            result.folds.push_back(std::move(audit));
            continue;
        }

        Rng os_rng(derive_seed(seed, "cv.oversample", static_cast<std::uint64_t>(f)));
        auto aug_local = oversample_indices(fold_train.labels, config.oversample_multiplier, os_rng);
        for (auto local : aug_local) audit.train_rows.push_back(train_rows[local]);
        DesignMatrix aug = fold_train.select_rows(aug_local);

        gbt::BoostConfig bc = config.boost;
        bc.seed = derive_seed(seed, "cv.fit", static_cast<std::uint64_t>(f));
        auto model = gbt::train(aug.values, labels01(aug), bc, aug.order.names());

        DesignMatrix heldout = matrix.select_rows(audit.heldout_rows);
        std::vector<ShortageStatus> preds;
        preds.reserve(heldout.labels.size());
        Eigen::VectorXd proba = gbt::predict_proba(model, heldout.values);
        for (Eigen::Index r = 0; r < proba.size(); ++r) {
            preds.push_back(proba(r) >= 0.5 ? ShortageStatus::InShortage
                                            : ShortageStatus::NotInShortage);
        }
        auto report = eval::macro_report(preds, heldout.labels);
        result.fold_scores.push_back(report.macro_f1);
        result.folds.push_back(std::move(audit));
    }

    if (result.fold_scores.empty()) {
        throw ValidationError("kfold_cv: all folds degenerate");
    }
    double sum = 0.0;
    for (double s : result.fold_scores) sum += s;
    result.mean_macro_f1 = sum / static_cast<double>(result.fold_scores.size());
    return result;
}

namespace {

// Index-ordered parallel map; worker count never affects results.
template <typename Fn>
void parallel_for(std::size_t count, int n_threads, Fn&& fn) {
    if (n_threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr error;
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(err_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    auto workers = static_cast<std::size_t>(n_threads);
    for (std::size_t t = 0; t < std::min(workers, count); ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace

SearchResult randomized_search(const DesignMatrix& matrix, SearchSpace space, int iterations,
                               int k, std::uint64_t seed, int n_threads) {
    if (iterations < 1) throw ValidationError("randomized_search: iterations must be >= 1");
    if (space.oversample_max <= 0.0) space.oversample_max = imbalance_ratio(matrix.labels);

    Rng sample_rng(derive_seed(seed, "search.sample"));
    std::vector<TuneConfig> configs;
    configs.reserve(static_cast<std::size_t>(iterations));
    for (int i = 0; i < iterations; ++i) configs.push_back(space.sample(sample_rng));

    SearchResult result;
    result.trace.resize(static_cast<std::size_t>(iterations));
    parallel_for(static_cast<std::size_t>(iterations), n_threads, [&](std::size_t i) {
        result.trace[i] = kfold_cv(matrix, configs[i], k, derive_seed(seed, "search.draw", i));
    });

    result.best_index = 0;
    for (std::size_t i = 1; i < result.trace.size(); ++i) {
        if (result.trace[i].mean_macro_f1 > result.trace[result.best_index].mean_macro_f1) {
            result.best_index = i;
        }
    }
    result.best = result.trace[result.best_index].config;
    return result;
}

namespace {

nlohmann::json tune_config_json(const TuneConfig& config) {
    nlohmann::json j;
    j["boost"] = nlohmann::json{{"num_rounds", config.boost.num_rounds},
                                {"learning_rate", config.boost.learning_rate},
                                {"max_depth", config.boost.max_depth},
                                {"min_child_weight", config.boost.min_child_weight},
                                {"reg_lambda", config.boost.reg_lambda},
                                {"gamma", config.boost.gamma},
                                {"subsample_rows", config.boost.subsample_rows},
                                {"colsample", config.boost.colsample},
                                {"base_score", config.boost.base_score},
                                {"seed", config.boost.seed}};
    j["oversample_multiplier"] = config.oversample_multiplier;
    return j;
}

}  // namespace

std::string tune_config_to_json(const TuneConfig& config) {
    return tune_config_json(config).dump(2);
}

TuneConfig tune_config_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    TuneConfig c;
    const auto& b = j.at("boost");
    c.boost.num_rounds = b.at("num_rounds").get<int>();
    c.boost.learning_rate = b.at("learning_rate").get<double>();
    c.boost.max_depth = b.at("max_depth").get<int>();
    c.boost.min_child_weight = b.at("min_child_weight").get<double>();
    c.boost.reg_lambda = b.at("reg_lambda").get<double>();
    c.boost.gamma = b.at("gamma").get<double>();
    c.boost.subsample_rows = b.at("subsample_rows").get<double>();
    c.boost.colsample = b.at("colsample").get<double>();
    c.boost.base_score = b.at("base_score").get<double>();
    c.boost.seed = b.at("seed").get<std::uint64_t>();
    c.oversample_multiplier = j.at("oversample_multiplier").get<double>();
    return c;
}

void save_tune_config(const std::string& path, const TuneConfig& config) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << tune_config_to_json(config) << "\n";
}

TuneConfig load_tune_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return tune_config_from_json(text);
}

void write_search_trace_csv(const std::string& path, std::span<const CvResult> trace) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << "draw_index,num_rounds,learning_rate,max_depth,min_child_weight,reg_lambda,gamma,"
           "subsample_rows,colsample,oversample_multiplier,fold_scores,mean_macro_f1\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& t = trace[i];
        std::string folds;
        for (std::size_t f = 0; f < t.fold_scores.size(); ++f) {
            if (f) folds.push_back(';');
            folds += csv::format_double(t.fold_scores[f]);
        }
        out << i << "," << t.config.boost.num_rounds << ","
            << csv::format_double(t.config.boost.learning_rate) << ","
            << t.config.boost.max_depth << ","
            << csv::format_double(t.config.boost.min_child_weight) << ","
            << csv::format_double(t.config.boost.reg_lambda) << ","
            << csv::format_double(t.config.boost.gamma) << ","
            << csv::format_double(t.config.boost.subsample_rows) << ","
            << csv::format_double(t.config.boost.colsample) << ","
            << csv::format_double(t.config.oversample_multiplier) << "," << folds << ","
            << csv::format_double(t.mean_macro_f1) << "\n";
    }
}

}  // namespace shortcast::tune
