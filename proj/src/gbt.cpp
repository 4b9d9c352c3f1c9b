#include "shortcast/gbt.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include "shortcast/csv.hpp"
#include "shortcast/rng.hpp"

namespace shortcast::gbt {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

// mean logistic loss term, stable for large |z|
double loss_term(double z, int y) {
    double sp = z < -30.0 ? -z : std::log1p(std::exp(-z));
    return sp + (1 - y) * z;
}

double split_gain(double gl, double hl, double gr, double hr, double lambda, double gamma) {
    double g = gl + gr;
    double h = hl + hr;
    return 0.5 * (gl * gl / (hl + lambda) + gr * gr / (hr + lambda) - g * g / (h + lambda)) -
           gamma;
}

// Threshold strictly separating two distinct present values a < b under the
// "value < threshold goes left" rule; falls back to b when the midpoint
// rounds down onto a.
double midpoint(double a, double b) {
    double m = a + 0.5 * (b - a);
    return m > a ? m : b;
}

struct Candidate {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    bool default_left = true;
    double gain = 0.0;
    double gl = 0.0, hl = 0.0, gr = 0.0, hr = 0.0;
};

bool better(const Candidate& a, const Candidate& b) {
    if (!a.found || !b.found) return a.found && !b.found;
    if (a.gain != b.gain) return a.gain > b.gain;
    if (a.feature != b.feature) return a.feature < b.feature;
    if (a.threshold != b.threshold) return a.threshold < b.threshold;
    return a.default_left && !b.default_left;
}

void consider(Candidate& best, int feature, double threshold, bool default_left, double gl,
              double hl, double gr, double hr, const BoostConfig& cfg) {
    if (hl < cfg.min_child_weight || hr < cfg.min_child_weight) return;
    double gain = split_gain(gl, hl, gr, hr, cfg.reg_lambda, cfg.gamma);
    if (gain < 0.0) return;
    Candidate c{true, feature, threshold, default_left, gain, gl, hl, gr, hr};
    if (better(c, best)) best = c;
}

double tree_value_at(const Tree& tree, const Eigen::MatrixXd& X, Eigen::Index row) {
    int node = 0;
    while (!tree.nodes[static_cast<std::size_t>(node)].is_leaf()) {
        const TreeNode& nd = tree.nodes[static_cast<std::size_t>(node)];
        double v = X(row, nd.feature);
        if (std::isnan(v)) {
            node = nd.default_left ? nd.left : nd.right;
        } else {
            node = v < nd.threshold ? nd.left : nd.right;
        }
    }
    return tree.nodes[static_cast<std::size_t>(node)].leaf_weight;
}

}  // namespace

void BoostConfig::validate() const {
    auto fail = [](const std::string& what) { throw ValidationError("BoostConfig: " + what); };
    if (num_rounds < 1) fail("num_rounds must be >= 1");
    if (!(learning_rate > 0.0 && learning_rate <= 1.0)) fail("learning_rate must be in (0,1]");
    if (max_depth < 1) fail("max_depth must be >= 1");
    if (min_child_weight < 0.0) fail("min_child_weight must be >= 0");
    if (reg_lambda < 0.0) fail("reg_lambda must be >= 0");
    if (gamma < 0.0) fail("gamma must be >= 0");
    if (!(subsample_rows > 0.0 && subsample_rows <= 1.0)) fail("subsample_rows must be in (0,1]");
    if (!(colsample > 0.0 && colsample <= 1.0)) fail("colsample must be in (0,1]");
    if (!(base_score > 0.0 && base_score < 1.0)) fail("base_score must be in (0,1)");
}

std::pair<double, double> logistic_grad_hess(double p, int y) {
    if (!(p > 0.0 && p < 1.0)) {
        throw ValidationError("logistic_grad_hess: probability outside (0,1)");
    }
    if (y != 0 && y != 1) throw ValidationError("logistic_grad_hess: label must be 0 or 1");
    return {p - static_cast<double>(y), p * (1.0 - p)};
}

double Tree::value_for(std::span<const double> row) const {
    int node = 0;
    while (!nodes[static_cast<std::size_t>(node)].is_leaf()) {
        const TreeNode& nd = nodes[static_cast<std::size_t>(node)];
        double v = row[static_cast<std::size_t>(nd.feature)];
        if (std::isnan(v)) {
            node = nd.default_left ? nd.left : nd.right;
        } else {
            node = v < nd.threshold ? nd.left : nd.right;
        }
    }
    return nodes[static_cast<std::size_t>(node)].leaf_weight;
}

double TreeEnsemble::base_logodds() const { return logit(config.base_score); }

std::optional<SplitInfo> best_split(const Eigen::MatrixXd& X, std::span<const double> grad,
                                    std::span<const double> hess,
                                    std::span<const std::uint32_t> rows,
                                    std::span<const int> features, const BoostConfig& config,
                                    bool missing_routing) {
    if (rows.size() < 2) return std::nullopt;
    double node_g = 0.0, node_h = 0.0;
    for (std::uint32_t r : rows) {
        node_g += grad[r];
        node_h += hess[r];
    }
    if (!(node_h > 0.0)) return std::nullopt;

    Candidate best;
    std::vector<std::pair<double, std::uint32_t>> present;
    for (int f : features) {
        present.clear();
        double present_g = 0.0, present_h = 0.0;
        std::size_t missing = 0;
        for (std::uint32_t r : rows) {
            double v = X(static_cast<Eigen::Index>(r), f);
            if (std::isnan(v)) {
                ++missing;
            } else {
                present.push_back({v, r});
                present_g += grad[r];
                present_h += hess[r];
            }
        }
        if (present.size() < 2) continue;
        std::sort(present.begin(), present.end());

        double miss_g = node_g - present_g;
        double miss_h = node_h - present_h;
        double prefix_g = 0.0, prefix_h = 0.0;
        for (std::size_t i = 0; i + 1 <= present.size(); ++i) {
            if (i > 0 && present[i].first != present[i - 1].first) {
                double t = midpoint(present[i - 1].first, present[i].first);
                if (missing == 0) {
                    consider(best, f, t, true, prefix_g, prefix_h, node_g - prefix_g,
                             node_h - prefix_h, config);
                } else if (!missing_routing) {
                    double gl = prefix_g + miss_g;
                    double hl = prefix_h + miss_h;
                    consider(best, f, t, true, gl, hl, node_g - gl, node_h - hl, config);
                } else {
                    consider(best, f, t, false, prefix_g, prefix_h, node_g - prefix_g,
                             node_h - prefix_h, config);
                    double gl = prefix_g + miss_g;
                    double hl = prefix_h + miss_h;
                    consider(best, f, t, true, gl, hl, node_g - gl, node_h - hl, config);
                }
            }
            prefix_g += grad[present[i].second];
            prefix_h += hess[present[i].second];
        }
    }
    if (!best.found) return std::nullopt;
    return SplitInfo{best.feature, best.threshold, best.default_left,
                     best.gain,    best.gl,        best.hl,
                     best.gr,      best.hr};
}

namespace {

struct BuildNode {
    double g = 0.0, h = 0.0;
    std::int64_t count = 0;
    int tree_index = -1;
};

struct SortedColumn {
    std::vector<double> values;        // ascending, present rows only
    std::vector<std::uint32_t> rows;
};

// Per-level exact greedy split search over pre-sorted columns. Two passes per
// feature: present totals per node, then boundary candidates.
class LevelSearcher {
public:
    LevelSearcher(const std::vector<SortedColumn>& columns, const BoostConfig& cfg,
                  bool missing_routing)
        : columns_(columns), cfg_(cfg), missing_routing_(missing_routing) {}

    // slots: active build-node ids; node_of maps row -> build node id.
    std::vector<Candidate> search(const std::vector<int>& features,
                                  const std::vector<BuildNode>& nodes,
                                  const std::vector<int>& slot_of,
                                  const std::vector<int>& slots,
                                  const std::vector<int>& node_of,
                                  std::span<const double> grad, std::span<const double> hess) {
        std::size_t k = slots.size();
        std::vector<Candidate> best(k);
        present_g_.assign(k, 0.0);
        present_h_.assign(k, 0.0);
        present_n_.assign(k, 0);
        acc_g_.assign(k, 0.0);
        acc_h_.assign(k, 0.0);
        acc_n_.assign(k, 0);
        last_.assign(k, 0.0);

        for (int f : features) {
            const auto& col = columns_[static_cast<std::size_t>(f)];
            const std::size_t len = col.rows.size();

            std::fill(present_g_.begin(), present_g_.end(), 0.0);
            std::fill(present_h_.begin(), present_h_.end(), 0.0);
            std::fill(present_n_.begin(), present_n_.end(), std::int64_t{0});
            for (std::size_t i = 0; i < len; ++i) {
                std::uint32_t r = col.rows[i];
                int b = node_of[r];
                if (b < 0) continue;
                int s = slot_of[static_cast<std::size_t>(b)];
                if (s < 0) continue;
                present_g_[static_cast<std::size_t>(s)] += grad[r];
                present_h_[static_cast<std::size_t>(s)] += hess[r];
                present_n_[static_cast<std::size_t>(s)]++;
            }

            std::fill(acc_g_.begin(), acc_g_.end(), 0.0);
            std::fill(acc_h_.begin(), acc_h_.end(), 0.0);
            std::fill(acc_n_.begin(), acc_n_.end(), std::int64_t{0});
            for (std::size_t i = 0; i < len; ++i) {
                std::uint32_t r = col.rows[i];
                int b = node_of[r];
                if (b < 0) continue;
                int s = slot_of[static_cast<std::size_t>(b)];
                if (s < 0) continue;
                std::size_t su = static_cast<std::size_t>(s);
                double v = col.values[i];
                if (acc_n_[su] > 0 && v != last_[su]) {
                    const BuildNode& node = nodes[static_cast<std::size_t>(slots[su])];
                    double t = midpoint(last_[su], v);
                    std::int64_t miss_n = node.count - present_n_[su];
                    if (miss_n == 0) {
                        consider(best[su], f, t, true, acc_g_[su], acc_h_[su],
                                 node.g - acc_g_[su], node.h - acc_h_[su], cfg_);
                    } else if (!missing_routing_) {
                        double gl = acc_g_[su] + (node.g - present_g_[su]);
                        double hl = acc_h_[su] + (node.h - present_h_[su]);
                        consider(best[su], f, t, true, gl, hl, node.g - gl, node.h - hl, cfg_);
                    } else {
                        consider(best[su], f, t, false, acc_g_[su], acc_h_[su],
                                 node.g - acc_g_[su], node.h - acc_h_[su], cfg_);
                        double gl = acc_g_[su] + (node.g - present_g_[su]);
                        double hl = acc_h_[su] + (node.h - present_h_[su]);
                        consider(best[su], f, t, true, gl, hl, node.g - gl, node.h - hl, cfg_);
                    }
                }
                last_[su] = v;
                acc_g_[su] += grad[r];
                acc_h_[su] += hess[r];
                acc_n_[su]++;
            }
        }
        return best;
    }

private:
    const std::vector<SortedColumn>& columns_;
    const BoostConfig& cfg_;
    bool missing_routing_;
    std::vector<double> present_g_, present_h_, acc_g_, acc_h_, last_;
    std::vector<std::int64_t> present_n_, acc_n_;
};

}  // namespace

TreeEnsemble train(const Eigen::MatrixXd& X, std::span<const int> y, const BoostConfig& config,
                   std::vector<std::string> feature_names, const TrainOptions& options) {
    config.validate();
    const Eigen::Index n = X.rows();
    const Eigen::Index n_features = X.cols();
    if (n < 2) throw ValidationError("train: need at least 2 rows");
    if (static_cast<Eigen::Index>(y.size()) != n) throw ValidationError("train: label size mismatch");
    if (static_cast<Eigen::Index>(feature_names.size()) != n_features) {
        throw ValidationError("train: feature name count mismatch");
    }
    for (int label : y) {
        if (label != 0 && label != 1) throw ValidationError("train: labels must be 0/1");
    }

    std::vector<SortedColumn> columns(static_cast<std::size_t>(n_features));
    {
        std::vector<std::pair<double, std::uint32_t>> buf;
        for (Eigen::Index f = 0; f < n_features; ++f) {
            buf.clear();
            for (Eigen::Index r = 0; r < n; ++r) {
                double v = X(r, f);
                if (!std::isnan(v)) buf.push_back({v, static_cast<std::uint32_t>(r)});
            }
            std::sort(buf.begin(), buf.end());
            auto& col = columns[static_cast<std::size_t>(f)];
            col.values.reserve(buf.size());
            col.rows.reserve(buf.size());
            for (const auto& [v, r] : buf) {
                col.values.push_back(v);
                col.rows.push_back(r);
            }
        }
    }

    TreeEnsemble ensemble;
    ensemble.config = config;
    ensemble.feature_names = std::move(feature_names);
    ensemble.feature_gain.assign(static_cast<std::size_t>(n_features), 0.0);

    Rng rng(config.seed);
    std::vector<double> z(static_cast<std::size_t>(n), logit(config.base_score));
    std::vector<double> grad(static_cast<std::size_t>(n)), hess(static_cast<std::size_t>(n));
    std::vector<int> node_of(static_cast<std::size_t>(n));
    std::vector<int> all_features(static_cast<std::size_t>(n_features));
    for (Eigen::Index f = 0; f < n_features; ++f) all_features[static_cast<std::size_t>(f)] = static_cast<int>(f);

    LevelSearcher searcher(columns, config, options.missing_routing);

    for (int round = 0; round < config.num_rounds; ++round) {
        for (Eigen::Index r = 0; r < n; ++r) {
            std::size_t i = static_cast<std::size_t>(r);
            double p = sigmoid(z[i]);
            grad[i] = p - static_cast<double>(y[i]);
            hess[i] = p * (1.0 - p);
        }

        // Seed draws happen in a fixed order: row subsample first, then columns.
        if (config.subsample_rows < 1.0) {
            for (std::size_t i = 0; i < node_of.size(); ++i) {
                node_of[i] = rng.bernoulli(config.subsample_rows) ? 0 : -1;
            }
        } else {
            std::fill(node_of.begin(), node_of.end(), 0);
        }
        std::vector<int> features = all_features;
        if (config.colsample < 1.0) {
            auto k = static_cast<std::uint32_t>(std::max<long long>(
                1, std::llround(config.colsample * static_cast<double>(n_features))));
            auto picked = rng.sample_without_replacement(static_cast<std::uint32_t>(n_features), k);
            features.assign(picked.begin(), picked.end());
        }

        Tree tree;
        std::vector<BuildNode> nodes(1);
        for (Eigen::Index r = 0; r < n; ++r) {
            std::size_t i = static_cast<std::size_t>(r);
            if (node_of[i] == 0) {
                nodes[0].g += grad[i];
                nodes[0].h += hess[i];
                nodes[0].count++;
            }
        }
        nodes[0].tree_index = 0;
        tree.nodes.emplace_back();

        std::vector<int> slots;
        if (nodes[0].count >= 2) slots.push_back(0);

        for (int depth = 0; depth < config.max_depth && !slots.empty(); ++depth) {
            std::vector<int> slot_of(nodes.size(), -1);
            for (std::size_t s = 0; s < slots.size(); ++s) {
                slot_of[static_cast<std::size_t>(slots[s])] = static_cast<int>(s);
            }
            auto best = searcher.search(features, nodes, slot_of, slots, node_of, grad, hess);

            // Materialize accepted splits; everything else becomes a leaf later.
            std::vector<int> left_of(slots.size(), -1), right_of(slots.size(), -1);
            bool any_split = false;
            for (std::size_t s = 0; s < slots.size(); ++s) {
                if (!best[s].found) continue;
                any_split = true;
                const Candidate& c = best[s];
                int parent_tree = nodes[static_cast<std::size_t>(slots[s])].tree_index;
                left_of[s] = static_cast<int>(nodes.size());
                right_of[s] = left_of[s] + 1;
                int left_tree = static_cast<int>(tree.nodes.size());

                nodes.push_back(BuildNode{0.0, 0.0, 0, left_tree});
                nodes.push_back(BuildNode{0.0, 0.0, 0, left_tree + 1});
                tree.nodes.emplace_back();
                tree.nodes.emplace_back();

                TreeNode& parent = tree.nodes[static_cast<std::size_t>(parent_tree)];
                parent.feature = c.feature;
                parent.threshold = c.threshold;
                parent.default_left = c.default_left;
                parent.left = left_tree;
                parent.right = left_tree + 1;
                ensemble.feature_gain[static_cast<std::size_t>(c.feature)] += c.gain;
            }
            if (!any_split) break;

            // Re-route rows of split nodes; child stats accumulate in row order.
            for (Eigen::Index r = 0; r < n; ++r) {
                std::size_t i = static_cast<std::size_t>(r);
                int b = node_of[i];
                if (b < 0 || b >= static_cast<int>(slot_of.size())) continue;
                int s = slot_of[static_cast<std::size_t>(b)];
                if (s < 0 || !best[static_cast<std::size_t>(s)].found) continue;
                const Candidate& c = best[static_cast<std::size_t>(s)];
                double v = X(r, c.feature);
                bool go_left = std::isnan(v) ? c.default_left : (v < c.threshold);
                int nb = go_left ? left_of[static_cast<std::size_t>(s)]
                                 : right_of[static_cast<std::size_t>(s)];
                node_of[i] = nb;
                nodes[static_cast<std::size_t>(nb)].g += grad[i];
                nodes[static_cast<std::size_t>(nb)].h += hess[i];
                nodes[static_cast<std::size_t>(nb)].count++;
            }

            std::vector<int> next_slots;
            for (std::size_t s = 0; s < slots.size(); ++s) {
                if (!best[s].found) continue;
                for (int nb : {left_of[s], right_of[s]}) {
                    if (nodes[static_cast<std::size_t>(nb)].count >= 2) next_slots.push_back(nb);
                }
            }
            slots = std::move(next_slots);
        }

        // Finalize leaves.
        for (const auto& node : nodes) {
            TreeNode& tn = tree.nodes[static_cast<std::size_t>(node.tree_index)];
            if (tn.feature >= 0) continue;
            double denom = node.h + config.reg_lambda;
            tn.leaf_weight = denom > 0.0 ? config.learning_rate * (-node.g / denom) : 0.0;
            tn.sum_grad = node.g;
            tn.sum_hess = node.h;
        }

        for (Eigen::Index r = 0; r < n; ++r) {
            z[static_cast<std::size_t>(r)] += tree_value_at(tree, X, r);
        }
        ensemble.trees.push_back(std::move(tree));

        double loss = 0.0;
        for (Eigen::Index r = 0; r < n; ++r) {
            std::size_t i = static_cast<std::size_t>(r);
            loss += loss_term(z[i], y[i]);
        }
        ensemble.training_loss.push_back(loss / static_cast<double>(n));
    }
    return ensemble;
}

double predict_logodds(const TreeEnsemble& ensemble, std::span<const double> row) {
    if (row.size() != ensemble.feature_names.size()) {
        throw ValidationError("predict: row has " + std::to_string(row.size()) +
                              " features, model expects " +
                              std::to_string(ensemble.feature_names.size()));
    }
    double z = ensemble.base_logodds();
    for (const auto& tree : ensemble.trees) z += tree.value_for(row);
    return z;
}

double predict_proba(const TreeEnsemble& ensemble, std::span<const double> row) {
    return sigmoid(predict_logodds(ensemble, row));
}

Eigen::VectorXd predict_proba(const TreeEnsemble& ensemble, const Eigen::MatrixXd& X) {
    if (X.cols() != static_cast<Eigen::Index>(ensemble.feature_names.size())) {
        throw ValidationError("predict: matrix feature count mismatch");
    }
    Eigen::VectorXd out(X.rows());
    for (Eigen::Index r = 0; r < X.rows(); ++r) {
        double z = ensemble.base_logodds();
        for (const auto& tree : ensemble.trees) z += tree_value_at(tree, X, r);
        out(r) = sigmoid(z);
    }
    return out;
}

ShortageStatus classify(const TreeEnsemble& ensemble, std::span<const double> row,
                        double threshold) {
    return predict_proba(ensemble, row) >= threshold ? ShortageStatus::InShortage
                                                     : ShortageStatus::NotInShortage;
}

std::vector<ImportanceEntry> gain_importance(const TreeEnsemble& ensemble) {
    double total = 0.0;
    for (double g : ensemble.feature_gain) total += g;
    std::vector<ImportanceEntry> entries;
    if (!(total > 0.0)) return entries;
    for (std::size_t f = 0; f < ensemble.feature_gain.size(); ++f) {
        if (ensemble.feature_gain[f] > 0.0) {
            entries.push_back({ensemble.feature_names[f], ensemble.feature_gain[f],
                               ensemble.feature_gain[f] / total});
        }
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const ImportanceEntry& a, const ImportanceEntry& b) {
                         return a.gain > b.gain;
                     });
    return entries;
}

namespace {

nlohmann::json config_to_json(const BoostConfig& c) {
    return {{"num_rounds", c.num_rounds},
            {"learning_rate", c.learning_rate},
            {"max_depth", c.max_depth},
            {"min_child_weight", c.min_child_weight},
            {"reg_lambda", c.reg_lambda},
            {"gamma", c.gamma},
            {"subsample_rows", c.subsample_rows},
            {"colsample", c.colsample},
            {"base_score", c.base_score},
            {"seed", c.seed}};
}

BoostConfig config_from_json(const nlohmann::json& j) {
    BoostConfig c;
    c.num_rounds = j.at("num_rounds").get<int>();
    c.learning_rate = j.at("learning_rate").get<double>();
    c.max_depth = j.at("max_depth").get<int>();
    c.min_child_weight = j.at("min_child_weight").get<double>();
    c.reg_lambda = j.at("reg_lambda").get<double>();
    c.gamma = j.at("gamma").get<double>();
    c.subsample_rows = j.at("subsample_rows").get<double>();
    c.colsample = j.at("colsample").get<double>();
    c.base_score = j.at("base_score").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    return c;
}

}  // namespace

std::string to_json_string(const TreeEnsemble& ensemble) {
    nlohmann::json j;
    j["format"] = "shortcast-gbt-1";
    j["config"] = config_to_json(ensemble.config);
    j["feature_order"] = ensemble.feature_names;
    j["base_score"] = ensemble.config.base_score;
    j["feature_gain"] = ensemble.feature_gain;
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& tree : ensemble.trees) {
        nlohmann::json nodes = nlohmann::json::array();
        for (const auto& nd : tree.nodes) {
            if (nd.is_leaf()) {
                nodes.push_back({{"weight", nd.leaf_weight},
                                 {"sum_grad", nd.sum_grad},
                                 {"sum_hess", nd.sum_hess}});
            } else {
                nodes.push_back({{"feature", nd.feature},
                                 {"threshold", nd.threshold},
                                 {"default", nd.default_left ? "left" : "right"},
                                 {"left", nd.left},
                                 {"right", nd.right}});
            }
        }
        trees.push_back({{"nodes", std::move(nodes)}});
    }
    j["trees"] = std::move(trees);
    return j.dump(2);
}

TreeEnsemble from_json_string(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != "shortcast-gbt-1") {
        throw ValidationError("unknown model format");
    }
    TreeEnsemble e;
    e.config = config_from_json(j.at("config"));
    e.feature_names = j.at("feature_order").get<std::vector<std::string>>();
    e.feature_gain = j.at("feature_gain").get<std::vector<double>>();
    for (const auto& jt : j.at("trees")) {
        Tree tree;
        for (const auto& jn : jt.at("nodes")) {
            TreeNode nd;
            if (jn.contains("feature")) {
                nd.feature = jn.at("feature").get<int>();
                nd.threshold = jn.at("threshold").get<double>();
                nd.default_left = jn.at("default").get<std::string>() == "left";
                nd.left = jn.at("left").get<int>();
                nd.right = jn.at("right").get<int>();
            } else {
                nd.leaf_weight = jn.at("weight").get<double>();
                nd.sum_grad = jn.at("sum_grad").get<double>();
                nd.sum_hess = jn.at("sum_hess").get<double>();
            }
            tree.nodes.push_back(nd);
        }
        e.trees.push_back(std::move(tree));
    }
    return e;
}

void save_model(const std::string& path, const TreeEnsemble& ensemble) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << to_json_string(ensemble) << "\n";
}

TreeEnsemble load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json_string(text);
}

void write_importance_csv(const std::string& path, std::span<const ImportanceEntry> entries) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << "rank,feature,gain,share\n";
    int rank = 1;
    for (const auto& e : entries) {
        out << rank++ << "," << e.feature << "," << csv::format_double(e.gain) << ","
            << csv::format_double(e.share) << "\n";
    }
}

}  // namespace shortcast::gbt
