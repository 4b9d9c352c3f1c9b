#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "shortcast/features.hpp"
#include "shortcast/gbt.hpp"
#include "shortcast/rng.hpp"

namespace shortcast::tune {

using features::DesignMatrix;

struct TuneConfig {
    gbt::BoostConfig boost;
    double oversample_multiplier = 1.0;
};

std::string tune_config_to_json(const TuneConfig& config);
TuneConfig tune_config_from_json(const std::string& text);
void save_tune_config(const std::string& path, const TuneConfig& config);
TuneConfig load_tune_config(const std::string& path);

// Randomized-search sampling ranges. Draw order is fixed: num_rounds,
// learning_rate (log), max_depth, min_child_weight, reg_lambda (log), gamma,
// subsample_rows, colsample, oversample_multiplier.
struct SearchSpace {
    std::pair<int, int> num_rounds{50, 500};
    std::pair<double, double> learning_rate{0.01, 0.3};
    std::pair<int, int> max_depth{2, 8};
    std::pair<double, double> min_child_weight{0.0, 5.0};
    std::pair<double, double> reg_lambda{0.1, 10.0};
    std::pair<double, double> gamma{0.0, 2.0};
    std::pair<double, double> subsample_rows{0.6, 1.0};
    std::pair<double, double> colsample{0.6, 1.0};
    double oversample_max = 0.0;  // <= 0 means "use the data's majority/minority ratio"

    TuneConfig sample(Rng& rng) const;
};

// majority count / minority count of the binary labels
double imbalance_ratio(std::span<const corpus::ShortageStatus> labels);

std::vector<int> labels01(const DesignMatrix& matrix);

// Original rows in order, followed by sampled duplicates of minority rows
// until the minority count reaches round(multiplier * original count).
std::vector<std::uint32_t> oversample_indices(std::span<const corpus::ShortageStatus> labels,
                                              double multiplier, Rng& rng);

DesignMatrix oversample(const DesignMatrix& matrix, double multiplier, std::uint64_t seed);

struct FoldAudit {
    std::vector<std::uint32_t> heldout_rows;  // original row ids, each exactly once
    std::vector<std::uint32_t> train_rows;    // original row ids, duplicates appended
    bool skipped = false;
    std::string warning;
};

struct CvResult {
    TuneConfig config;
    std::vector<double> fold_scores;  // evaluated folds only, fold order
    double mean_macro_f1 = 0.0;
    std::vector<FoldAudit> folds;     // one per fold, including skipped ones
};

// Shuffles by seed, splits into k near-equal folds, oversamples only the
// training side of each fold, and scores macro-F1 on the untouched held-out
// fold. Folds whose training part is single-class are skipped with a warning.
CvResult kfold_cv(const DesignMatrix& matrix, const TuneConfig& config, int k = 5,
                  std::uint64_t seed = 0);

struct SearchResult {
    TuneConfig best;
    std::size_t best_index = 0;
    std::vector<CvResult> trace;
};

// Draws `iterations` configs from the space and ranks them by mean CV
// macro-F1 (ties: earliest draw). Evaluations may run on n_threads; results
// are merged by draw index, so the winner is execution-order independent.
SearchResult randomized_search(const DesignMatrix& matrix, SearchSpace space,
                               int iterations = 2500, int k = 5, std::uint64_t seed = 0,
                               int n_threads = 1);

void write_search_trace_csv(const std::string& path, std::span<const CvResult> trace);

}  // namespace shortcast::tune
