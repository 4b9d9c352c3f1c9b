#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "shortcast/corpus.hpp"

namespace shortcast::eval {

using corpus::ShortageStatus;

struct ConfusionCounts {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;
    std::int64_t tn = 0;

    std::int64_t total() const { return tp + fp + fn + tn; }
};

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// precision = TP/(TP+FP), recall = TP/(TP+FN), f1 = 2PR/(P+R); 0/0 -> 0.
ClassMetrics class_metrics(const ConfusionCounts& counts);

struct EvaluationReport {
    ConfusionCounts in_shortage_counts;      // InShortage treated as positive
    ConfusionCounts not_in_shortage_counts;  // NotInShortage treated as positive
    ClassMetrics in_shortage;
    ClassMetrics not_in_shortage;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
    std::string subset = "full_test";
    std::int64_t n_rows = 0;
};

EvaluationReport macro_report(std::span<const ShortageStatus> preds,
                              std::span<const ShortageStatus> labels);

}  // namespace shortcast::eval
