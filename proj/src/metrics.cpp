#include "shortcast/metrics.hpp"

#include "shortcast/csv.hpp"

namespace shortcast::eval {

namespace {

double ratio(std::int64_t num, std::int64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ClassMetrics class_metrics(const ConfusionCounts& counts) {
    ClassMetrics m;
    m.precision = ratio(counts.tp, counts.tp + counts.fp);
    m.recall = ratio(counts.tp, counts.tp + counts.fn);
    double pr = m.precision + m.recall;
    m.f1 = pr == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / pr;
    return m;
}

EvaluationReport macro_report(std::span<const ShortageStatus> preds,
                              std::span<const ShortageStatus> labels) {
    if (preds.size() != labels.size()) throw ValidationError("macro_report: length mismatch");
    if (preds.empty()) throw ValidationError("macro_report: empty input");

    EvaluationReport report;
    report.n_rows = static_cast<std::int64_t>(preds.size());
    auto count = [&](ShortageStatus positive) {
        ConfusionCounts c;
        for (std::size_t i = 0; i < preds.size(); ++i) {
            bool pred_pos = preds[i] == positive;
            bool label_pos = labels[i] == positive;
            if (pred_pos && label_pos) c.tp++;
            else if (pred_pos && !label_pos) c.fp++;
            else if (!pred_pos && label_pos) c.fn++;
            else c.tn++;
        }
        return c;
    };
    report.in_shortage_counts = count(ShortageStatus::InShortage);
    report.not_in_shortage_counts = count(ShortageStatus::NotInShortage);
    report.in_shortage = class_metrics(report.in_shortage_counts);
    report.not_in_shortage = class_metrics(report.not_in_shortage_counts);
    report.macro_precision = 0.5 * (report.in_shortage.precision + report.not_in_shortage.precision);
    report.macro_recall = 0.5 * (report.in_shortage.recall + report.not_in_shortage.recall);
    report.macro_f1 = 0.5 * (report.in_shortage.f1 + report.not_in_shortage.f1);
    return report;
}

}  // namespace shortcast::eval
