#pragma once

#include <Eigen/Core>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "shortcast/corpus.hpp"

namespace shortcast::features {

using corpus::JobAd;
using corpus::LaborSupplyRecord;
using corpus::OccupationCode;
using corpus::ShortageLabel;
using corpus::ShortageStatus;
using corpus::SkillTaxonomy;

using OccYear = std::pair<std::string, int>;
using FeatureMap = std::map<std::string, double>;  // absent keys mean missing

// The 12 labor-demand feature names, in report order.
const std::vector<std::string>& demand_feature_names();
// The 32 base feature names: labor demand then labor supply.
const std::vector<std::string>& base_feature_names();

struct DemandTable {
    std::map<OccYear, FeatureMap> values;
};

// Per occupation-year: posting count, max/min of within-year quarterly salary
// medians and averages, quarterly means of experience/education, and mention
// counts per taxonomy category. Quarters without data contribute nothing.
DemandTable demand_features(std::span<const JobAd> ads, const SkillTaxonomy& taxonomy);

class SupplyMeans {
public:
    // (code, year, metric) -> mean of the present quarterly values
    std::map<std::tuple<std::string, int, std::string>, double> means;

    // Resolves all 20 metrics for a 6-digit occupation through its unit,
    // sub-major and major prefixes. Missing metrics are absent keys.
    FeatureMap for_occupation(const std::string& occ6, int year) const;
};

SupplyMeans supply_features(std::span<const LaborSupplyRecord> records);

enum class FeatureClass { LD, LS, ARLag, LaggedTarget };

std::string feature_class_to_string(FeatureClass c);
FeatureClass feature_class_from_string(const std::string& s);

struct FeatureSpec {
    std::string name;
    FeatureClass cls;     // LD/LS for base columns, ARLag or LaggedTarget otherwise
    FeatureClass origin;  // LD or LS for ARLag columns; equals cls for the rest
    int lag = 0;

    bool operator==(const FeatureSpec&) const = default;
};

struct FeatureOrder {
    std::vector<FeatureSpec> specs;

    Eigen::Index size() const { return static_cast<Eigen::Index>(specs.size()); }
    std::optional<Eigen::Index> index_of(const std::string& name) const;
    std::vector<std::string> names() const;
};

// Canonical order for a lag depth: 32 base columns, all base columns lagged
// 1..L, then the lagged target columns.
FeatureOrder canonical_feature_order(int lags);

struct DesignMatrix {
    std::vector<OccupationCode> occupations;  // one entry per row
    std::vector<int> years;
    std::vector<ShortageStatus> labels;
    Eigen::MatrixXd values;  // rows x features, NaN = absent
    FeatureOrder order;

    Eigen::Index rows() const { return values.rows(); }
    Eigen::Index cols() const { return values.cols(); }

    // Lagged target column value as a status, if present for this row.
    std::optional<ShortageStatus> lagged_target(Eigen::Index row, int lag) const;

    DesignMatrix select_rows(std::span<const std::uint32_t> idx) const;
    DesignMatrix select_columns(std::span<const Eigen::Index> cols) const;
};

struct BuildResult {
    DesignMatrix matrix;
    std::vector<std::string> warnings;
};

// One row per shortage label. Lag-x columns copy the base value / target
// status from x years earlier where that data exists.
BuildResult build_design_matrix(const DemandTable& demand, const SupplyMeans& supply,
                                std::span<const ShortageLabel> labels, int lags = 2);

// Ads whose 6-digit code is untracked are reassigned to the single tracked
// occupation sharing their 4-digit unit group, when that is unambiguous.
std::pair<std::vector<JobAd>, std::vector<std::string>> remap_ads_to_tracked(
    std::vector<JobAd> ads, const std::vector<ShortageLabel>& labels);

// Rows with year <= train_end_year go to the first matrix. Throws if either
// side would be empty.
std::pair<DesignMatrix, DesignMatrix> temporal_split(const DesignMatrix& matrix,
                                                     int train_end_year = 2016);

void write_design_matrix_csv(const std::string& path, const DesignMatrix& matrix);
void write_feature_order_json(const std::string& path, const FeatureOrder& order);
FeatureOrder load_feature_order_json(const std::string& path);
DesignMatrix load_design_matrix(const std::string& csv_path, const std::string& order_path);

}  // namespace shortcast::features
