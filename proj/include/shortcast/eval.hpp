#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shortcast/features.hpp"
#include "shortcast/gbt.hpp"
#include "shortcast/metrics.hpp"
#include "shortcast/tune.hpp"

namespace shortcast::eval {

using features::DesignMatrix;

enum class AblationName { AllIn, LD, LS, LD_plus_LS, AutoRegressive, Naive };

const std::vector<AblationName>& all_ablation_configs();
std::string ablation_name_to_string(AblationName name);
std::optional<AblationName> ablation_name_from_string(const std::string& s);

// Columns included by each configuration. AllIn is the union of the others;
// AutoRegressive keeps only lagged-target columns; Naive uses none.
std::vector<Eigen::Index> ablation_columns(const features::FeatureOrder& order,
                                           AblationName name);

// Previous year's shortage status, the copy-forward baseline. Empty when the
// row has no lag-1 target.
std::optional<ShortageStatus> naive_predict(const DesignMatrix& matrix, Eigen::Index row);

// Rows whose label differs from their lag-1 target.
std::vector<std::uint32_t> change_subset(const DesignMatrix& matrix);

ShortageStatus majority_status(std::span<const ShortageStatus> labels);

struct AblationSettings {
    int iterations = 200;
    int folds = 5;
    int train_end_year = 2016;
    std::uint64_t seed = 0;
    int n_threads = 1;
    double classify_threshold = 0.5;
    tune::SearchSpace space;
};

struct AblationEntry {
    AblationName name;
    EvaluationReport report;  // report.subset is "full_test" or "change_subset"
};

struct AblationResult {
    std::vector<AblationEntry> rows;  // two entries per configuration, config order
    std::map<AblationName, gbt::TreeEnsemble> models;       // refit on oversampled train
    std::map<AblationName, tune::TuneConfig> best_configs;
    std::vector<std::string> warnings;
};

// Per configuration: restrict columns, run the randomized search on the
// temporal training split, refit the winner on the oversampled training set,
// then score the full test set and the status-change subset. Naive skips
// training entirely.
AblationResult run_ablation(const DesignMatrix& matrix, std::span<const AblationName> configs,
                            const AblationSettings& settings);

void write_ablation_csv(const std::string& path, std::span<const AblationEntry> rows);

}  // namespace shortcast::eval
