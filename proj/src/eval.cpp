#include "shortcast/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace shortcast::eval {

const std::vector<AblationName>& all_ablation_configs() {
    static const std::vector<AblationName> names = {
        AblationName::AllIn,         AblationName::LD,    AblationName::LS,
        AblationName::LD_plus_LS,    AblationName::AutoRegressive,
        AblationName::Naive,
    };
    return names;
}

std::string ablation_name_to_string(AblationName name) {
    switch (name) {
        case AblationName::AllIn: return "AllIn";
        case AblationName::LD: return "LD";
        case AblationName::LS: return "LS";
        case AblationName::LD_plus_LS: return "LD_plus_LS";
        case AblationName::AutoRegressive: return "AutoRegressive";
        default: return "Naive";
    }
}

std::optional<AblationName> ablation_name_from_string(const std::string& s) {
    for (auto name : all_ablation_configs()) {
        if (ablation_name_to_string(name) == s) return name;
    }
    return std::nullopt;
}

std::vector<Eigen::Index> ablation_columns(const features::FeatureOrder& order,
                                           AblationName name) {
    using features::FeatureClass;
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < order.size(); ++i) {
        const auto& spec = order.specs[static_cast<std::size_t>(i)];
        bool keep = false;
        switch (name) {
            case AblationName::AllIn: keep = true; break;
            case AblationName::LD: keep = spec.origin == FeatureClass::LD; break;
            case AblationName::LS: keep = spec.origin == FeatureClass::LS; break;
            case AblationName::LD_plus_LS:
                keep = spec.origin == FeatureClass::LD || spec.origin == FeatureClass::LS;
                break;
            case AblationName::AutoRegressive:
                keep = spec.cls == FeatureClass::LaggedTarget;
                break;
            case AblationName::Naive: keep = false; break;
        }
        if (keep) cols.push_back(i);
    }
    return cols;
}

std::optional<ShortageStatus> naive_predict(const DesignMatrix& matrix, Eigen::Index row) {
    return matrix.lagged_target(row, 1);
}

std::vector<std::uint32_t> change_subset(const DesignMatrix& matrix) {
    std::vector<std::uint32_t> rows;
    for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
        auto prev = matrix.lagged_target(r, 1);
        if (prev && *prev != matrix.labels[static_cast<std::size_t>(r)]) {
            rows.push_back(static_cast<std::uint32_t>(r));
        }
    }
    return rows;
}

ShortageStatus majority_status(std::span<const ShortageStatus> labels) {
    std::int64_t pos = 0, neg = 0;
    for (auto s : labels) (s == ShortageStatus::InShortage ? pos : neg)++;
    return pos > neg ? ShortageStatus::InShortage : ShortageStatus::NotInShortage;
}

namespace {

std::vector<ShortageStatus> model_predictions(const gbt::TreeEnsemble& model,
                                              const DesignMatrix& matrix, double threshold) {
    Eigen::VectorXd proba = gbt::predict_proba(model, matrix.values);
    std::vector<ShortageStatus> preds;
    preds.reserve(static_cast<std::size_t>(proba.size()));
    for (Eigen::Index r = 0; r < proba.size(); ++r) {
        preds.push_back(proba(r) >= threshold ? ShortageStatus::InShortage
                                              : ShortageStatus::NotInShortage);
    }
    return preds;
}

std::vector<ShortageStatus> gather_labels(const DesignMatrix& matrix,
                                          std::span<const std::uint32_t> rows) {
    std::vector<ShortageStatus> out;
    out.reserve(rows.size());
    for (auto r : rows) out.push_back(matrix.labels[r]);
    return out;
}

}  // namespace

AblationResult run_ablation(const DesignMatrix& matrix, std::span<const AblationName> configs,
                            const AblationSettings& settings) {
    auto [train, test] = features::temporal_split(matrix, settings.train_end_year);
    auto change_rows = change_subset(test);

    AblationResult result;
    for (AblationName name : configs) {
        const std::string tag = "ablate." + ablation_name_to_string(name);
        std::uint64_t config_seed = derive_seed(settings.seed, tag);

        if (name == AblationName::Naive) {
            std::vector<ShortageStatus> preds, labels;
            std::int64_t excluded = 0;
            for (Eigen::Index r = 0; r < test.rows(); ++r) {
                auto p = naive_predict(test, r);
                if (!p) {
                    excluded++;
                    continue;
                }
                preds.push_back(*p);
                labels.push_back(test.labels[static_cast<std::size_t>(r)]);
            }
            if (excluded > 0) {
                result.warnings.push_back("Naive: " + std::to_string(excluded) +
                                          " test rows without lag-1 target excluded");
            }
            auto full = macro_report(preds, labels);
            full.subset = "full_test";
            result.rows.push_back({name, full});

            std::vector<ShortageStatus> cpreds, clabels;
            for (auto r : change_rows) {
                cpreds.push_back(*naive_predict(test, static_cast<Eigen::Index>(r)));
                clabels.push_back(test.labels[r]);
            }
            EvaluationReport change;
            if (!cpreds.empty()) change = macro_report(cpreds, clabels);
            change.subset = "change_subset";
            change.n_rows = static_cast<std::int64_t>(cpreds.size());
            result.rows.push_back({name, change});
            continue;
        }

        auto cols = ablation_columns(matrix.order, name);
        DesignMatrix train_c = train.select_columns(cols);
        DesignMatrix test_c = test.select_columns(cols);

        auto search = tune::randomized_search(train_c, settings.space, settings.iterations,
                                              settings.folds, config_seed, settings.n_threads);
        tune::TuneConfig best = search.best;

        DesignMatrix refit =
            tune::oversample(train_c, best.oversample_multiplier,
                             derive_seed(config_seed, "refit.oversample"));
        gbt::BoostConfig bc = best.boost;
        bc.seed = derive_seed(config_seed, "refit.fit");
        auto model = gbt::train(refit.values, tune::labels01(refit), bc, refit.order.names());

        auto preds = model_predictions(model, test_c, settings.classify_threshold);
        auto full = macro_report(preds, test.labels);
        full.subset = "full_test";
        result.rows.push_back({name, full});

        EvaluationReport change;
        if (!change_rows.empty()) {
            std::vector<ShortageStatus> cpreds;
            for (auto r : change_rows) cpreds.push_back(preds[r]);
            change = macro_report(cpreds, gather_labels(test, change_rows));
        }
        change.subset = "change_subset";
        change.n_rows = static_cast<std::int64_t>(change_rows.size());
        result.rows.push_back({name, change});

        result.best_configs.emplace(name, best);
        result.models.emplace(name, std::move(model));
    }
    return result;
}

void write_ablation_csv(const std::string& path, std::span<const AblationEntry> rows) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << "config,subset,macro_precision,macro_recall,macro_f1,"
           "class1_p,class1_r,class1_f1,class0_p,class0_r,class0_f1,n_rows\n";
    for (const auto& row : rows) {
        const auto& r = row.report;
        out << ablation_name_to_string(row.name) << "," << r.subset << ","
            << csv::format_double(r.macro_precision) << "," << csv::format_double(r.macro_recall)
            << "," << csv::format_double(r.macro_f1) << ","
            << csv::format_double(r.in_shortage.precision) << ","
            << csv::format_double(r.in_shortage.recall) << ","
            << csv::format_double(r.in_shortage.f1) << ","
            << csv::format_double(r.not_in_shortage.precision) << ","
            << csv::format_double(r.not_in_shortage.recall) << ","
            << csv::format_double(r.not_in_shortage.f1) << "," << r.n_rows << "\n";
    }
}

}  // namespace shortcast::eval
