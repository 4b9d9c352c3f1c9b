#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shortcast/corpus.hpp"

namespace shortcast::gbt {

using corpus::ShortageStatus;

struct BoostConfig {
    int num_rounds = 100;
    double learning_rate = 0.1;       // (0, 1]
    int max_depth = 3;
    double min_child_weight = 0.0;    // minimum hessian sum per child
    double reg_lambda = 1.0;
    double gamma = 0.0;               // subtracted from every split gain
    double subsample_rows = 1.0;      // (0, 1]
    double colsample = 1.0;           // (0, 1]
    double base_score = 0.5;          // initial probability
    std::uint64_t seed = 0;

    void validate() const;
};

struct TrainOptions {
    // When false, rows with missing values always follow the left child and
    // no missing-direction search is performed. Datasets without missing
    // values train identically either way.
    bool missing_routing = true;
};

// p strictly inside (0,1); returns (p - y, p * (1 - p)).
std::pair<double, double> logistic_grad_hess(double p, int y);

struct TreeNode {
    int feature = -1;        // -1 for leaves
    double threshold = 0.0;  // value < threshold goes left
    bool default_left = true;
    int left = -1;
    int right = -1;
    double leaf_weight = 0.0;  // log-odds increment, learning rate included
    double sum_grad = 0.0;
    double sum_hess = 0.0;

    bool is_leaf() const { return feature < 0; }
};

struct Tree {
    std::vector<TreeNode> nodes;

    double value_for(std::span<const double> row) const;
};

struct TreeEnsemble {
    BoostConfig config;
    std::vector<std::string> feature_names;
    std::vector<Tree> trees;
    std::vector<double> feature_gain;    // cumulative split gain per feature
    std::vector<double> training_loss;   // mean logistic loss after each round (not serialized)

    double base_logodds() const;
};

struct SplitInfo {
    int feature = -1;
    double threshold = 0.0;
    bool default_left = true;
    double gain = 0.0;
    double grad_left = 0.0, hess_left = 0.0;
    double grad_right = 0.0, hess_right = 0.0;
};

// Reference exact-greedy search over one node: thresholds at midpoints of
// consecutive distinct present values, both missing directions considered.
// Ties break on (lower feature, lower threshold, left default). Returns
// nothing when the best feasible gain is negative.
std::optional<SplitInfo> best_split(const Eigen::MatrixXd& X, std::span<const double> grad,
                                    std::span<const double> hess,
                                    std::span<const std::uint32_t> rows,
                                    std::span<const int> features, const BoostConfig& config,
                                    bool missing_routing = true);

// Depth-wise greedy boosting with logistic loss. Deterministic for a fixed
// (data, config) pair; the seed only drives row/column subsampling.
TreeEnsemble train(const Eigen::MatrixXd& X, std::span<const int> y, const BoostConfig& config,
                   std::vector<std::string> feature_names, const TrainOptions& options = {});

double predict_logodds(const TreeEnsemble& ensemble, std::span<const double> row);
double predict_proba(const TreeEnsemble& ensemble, std::span<const double> row);
Eigen::VectorXd predict_proba(const TreeEnsemble& ensemble, const Eigen::MatrixXd& X);
ShortageStatus classify(const TreeEnsemble& ensemble, std::span<const double> row,
                        double threshold = 0.5);

struct ImportanceEntry {
    std::string feature;
    double gain = 0.0;
    double share = 0.0;
};

// Features ordered by cumulative split gain; shares sum to 1. Empty when the
// ensemble never split.
std::vector<ImportanceEntry> gain_importance(const TreeEnsemble& ensemble);

std::string to_json_string(const TreeEnsemble& ensemble);
TreeEnsemble from_json_string(const std::string& text);
void save_model(const std::string& path, const TreeEnsemble& ensemble);
TreeEnsemble load_model(const std::string& path);

void write_importance_csv(const std::string& path, std::span<const ImportanceEntry> entries);

}  // namespace shortcast::gbt
