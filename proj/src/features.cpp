#include "shortcast/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include <nlohmann/json.hpp>

namespace shortcast::features {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// max/min over within-year quarterly aggregates; quarters with no data are skipped
void add_quarterly_extrema(FeatureMap& out, const std::string& max_name,
                           const std::string& min_name,
                           const std::map<int, std::vector<double>>& per_quarter,
                           double (*aggregate)(std::vector<double>)) {
    std::vector<double> quarterly;
    for (const auto& [q, vals] : per_quarter) {
        if (!vals.empty()) quarterly.push_back(aggregate(vals));
    }
    if (quarterly.empty()) return;
    out[max_name] = *std::max_element(quarterly.begin(), quarterly.end());
    out[min_name] = *std::min_element(quarterly.begin(), quarterly.end());
}

double median_agg(std::vector<double> v) { return median(std::move(v)); }
double mean_agg(std::vector<double> v) { return mean(v); }

}  // namespace

const std::vector<std::string>& demand_feature_names() {
    static const std::vector<std::string> names = {
        "posting_frequency",  "max_median_salary",  "min_median_salary",
        "max_avg_salary",     "min_avg_salary",     "max_avg_experience",
        "min_avg_experience", "max_avg_education",  "min_avg_education",
        "specialized_count",  "baseline_count",     "software_count",
    };
    return names;
}

const std::vector<std::string>& base_feature_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> all = demand_feature_names();
        const auto& supply = corpus::supply_metric_names();
        all.insert(all.end(), supply.begin(), supply.end());
        return all;
    }();
    return names;
}

DemandTable demand_features(std::span<const JobAd> ads, const SkillTaxonomy& taxonomy) {
    struct Group {
        int count = 0;
        std::map<int, std::vector<double>> salary_median, salary_avg, experience, education;
        std::int64_t specialized = 0, baseline = 0, software = 0;
    };
    std::map<OccYear, Group> groups;
    for (const auto& ad : ads) {
        auto& g = groups[{ad.occupation.code, ad.year}];
        g.count++;
        if (ad.salary_median) g.salary_median[ad.quarter].push_back(*ad.salary_median);
        if (ad.salary_avg) g.salary_avg[ad.quarter].push_back(*ad.salary_avg);
        if (ad.experience_years) g.experience[ad.quarter].push_back(*ad.experience_years);
        if (ad.education_years) g.education[ad.quarter].push_back(*ad.education_years);
        for (const auto& s : ad.skills) {
            switch (taxonomy.category_of(s)) {
                case corpus::SkillCategory::specialized: g.specialized++; break;
                case corpus::SkillCategory::baseline: g.baseline++; break;
                case corpus::SkillCategory::software: g.software++; break;
                default: break;
            }
        }
    }

    DemandTable table;
    for (const auto& [key, g] : groups) {
        FeatureMap f;
        f["posting_frequency"] = static_cast<double>(g.count);
        add_quarterly_extrema(f, "max_median_salary", "min_median_salary", g.salary_median,
                              median_agg);
        add_quarterly_extrema(f, "max_avg_salary", "min_avg_salary", g.salary_avg, mean_agg);
        add_quarterly_extrema(f, "max_avg_experience", "min_avg_experience", g.experience,
                              mean_agg);
        add_quarterly_extrema(f, "max_avg_education", "min_avg_education", g.education, mean_agg);
        f["specialized_count"] = static_cast<double>(g.specialized);
        f["baseline_count"] = static_cast<double>(g.baseline);
        f["software_count"] = static_cast<double>(g.software);
        table.values[key] = std::move(f);
    }
    return table;
}

SupplyMeans supply_features(std::span<const LaborSupplyRecord> records) {
    std::map<std::tuple<std::string, int, std::string>, std::vector<double>> quarterly;
    for (const auto& r : records) {
        quarterly[{r.occupation.code, r.year, r.metric}].push_back(r.value);
    }
    SupplyMeans out;
    for (const auto& [key, vals] : quarterly) out.means[key] = mean(vals);
    return out;
}

FeatureMap SupplyMeans::for_occupation(const std::string& occ6, int year) const {
    FeatureMap f;
    for (const auto& metric : corpus::supply_metric_names()) {
        std::size_t digits = 0;
        switch (corpus::metric_level(metric)) {
            case corpus::CodeLevel::unit: digits = 4; break;
            case corpus::CodeLevel::sub_major: digits = 2; break;
            default: digits = 1; break;
        }
        auto it = means.find({occ6.substr(0, digits), year, metric});
        if (it != means.end()) f[metric] = it->second;
    }
    return f;
}

std::string feature_class_to_string(FeatureClass c) {
    switch (c) {
        case FeatureClass::LD: return "LD";
        case FeatureClass::LS: return "LS";
        case FeatureClass::ARLag: return "AR-lag";
        default: return "lagged-target";
    }
}

FeatureClass feature_class_from_string(const std::string& s) {
    if (s == "LD") return FeatureClass::LD;
    if (s == "LS") return FeatureClass::LS;
    if (s == "AR-lag") return FeatureClass::ARLag;
    if (s == "lagged-target") return FeatureClass::LaggedTarget;
    throw ValidationError("unknown feature class: " + s);
}

std::optional<Eigen::Index> FeatureOrder::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < specs.size(); ++i) {
        if (specs[i].name == name) return static_cast<Eigen::Index>(i);
    }
    return std::nullopt;
}

std::vector<std::string> FeatureOrder::names() const {
    std::vector<std::string> out;
    out.reserve(specs.size());
    for (const auto& s : specs) out.push_back(s.name);
    return out;
}

FeatureOrder canonical_feature_order(int lags) {
    FeatureOrder order;
    const auto& demand = demand_feature_names();
    std::set<std::string> demand_set(demand.begin(), demand.end());
    for (const auto& name : base_feature_names()) {
        FeatureClass cls = demand_set.count(name) ? FeatureClass::LD : FeatureClass::LS;
        order.specs.push_back({name, cls, cls, 0});
    }
    for (int lag = 1; lag <= lags; ++lag) {
        for (const auto& name : base_feature_names()) {
            FeatureClass origin = demand_set.count(name) ? FeatureClass::LD : FeatureClass::LS;
            order.specs.push_back(
                {name + "_lag" + std::to_string(lag), FeatureClass::ARLag, origin, lag});
        }
    }
    for (int lag = 1; lag <= lags; ++lag) {
        order.specs.push_back({"target_lag" + std::to_string(lag), FeatureClass::LaggedTarget,
                               FeatureClass::LaggedTarget, lag});
    }
    return order;
}

std::optional<ShortageStatus> DesignMatrix::lagged_target(Eigen::Index row, int lag) const {
    auto col = order.index_of("target_lag" + std::to_string(lag));
    if (!col) return std::nullopt;
    double v = values(row, *col);
    if (std::isnan(v)) return std::nullopt;
    return corpus::status_from_int(static_cast<int>(v));
}

DesignMatrix DesignMatrix::select_rows(std::span<const std::uint32_t> idx) const {
    DesignMatrix out;
    out.order = order;
    out.values.resize(static_cast<Eigen::Index>(idx.size()), values.cols());
    out.occupations.reserve(idx.size());
    out.years.reserve(idx.size());
    out.labels.reserve(idx.size());
    Eigen::Index r = 0;
    for (std::uint32_t i : idx) {
        out.values.row(r++) = values.row(static_cast<Eigen::Index>(i));
        out.occupations.push_back(occupations[i]);
        out.years.push_back(years[i]);
        out.labels.push_back(labels[i]);
    }
    return out;
}

DesignMatrix DesignMatrix::select_columns(std::span<const Eigen::Index> cols) const {
    DesignMatrix out;
    out.occupations = occupations;
    out.years = years;
    out.labels = labels;
    out.values.resize(values.rows(), static_cast<Eigen::Index>(cols.size()));
    Eigen::Index c = 0;
    for (Eigen::Index col : cols) {
        out.values.col(c++) = values.col(col);
        out.order.specs.push_back(order.specs[static_cast<std::size_t>(col)]);
    }
    return out;
}

BuildResult build_design_matrix(const DemandTable& demand, const SupplyMeans& supply,
                                std::span<const ShortageLabel> labels, int lags) {
    if (labels.empty()) throw ValidationError("build_design_matrix: no labels");
    if (lags < 0) throw ValidationError("build_design_matrix: negative lag count");

    BuildResult result;
    DesignMatrix& m = result.matrix;
    m.order = canonical_feature_order(lags);

    std::vector<ShortageLabel> sorted(labels.begin(), labels.end());
    std::sort(sorted.begin(), sorted.end(), [](const ShortageLabel& a, const ShortageLabel& b) {
        return std::tie(a.occupation.code, a.year) < std::tie(b.occupation.code, b.year);
    });

    std::set<std::string> tracked;
    std::map<std::pair<std::string, int>, ShortageStatus> label_map;
    for (const auto& l : sorted) {
        tracked.insert(l.occupation.code);
        label_map[{l.occupation.code, l.year}] = l.status;
    }
    for (const auto& [key, _] : demand.values) {
        if (!tracked.count(key.first)) {
            result.warnings.push_back("job ads for untracked occupation " + key.first + "/" +
                                      std::to_string(key.second) + " ignored");
        }
    }
    std::set<std::string> tracked_prefixes;
    for (const auto& code : tracked) {
        tracked_prefixes.insert(code.substr(0, 1));
        tracked_prefixes.insert(code.substr(0, 2));
        tracked_prefixes.insert(code.substr(0, 4));
    }
    std::set<std::string> warned_supply;
    for (const auto& [key, _] : supply.means) {
        const auto& code = std::get<0>(key);
        if (!tracked_prefixes.count(code) && warned_supply.insert(code).second) {
            result.warnings.push_back("labor supply for untracked group " + code + " ignored");
        }
    }

    const Eigen::Index n = static_cast<Eigen::Index>(sorted.size());
    m.values.resize(n, m.order.size());
    m.values.setConstant(kNaN);

    // Base values per (occupation, year), reused for the lagged lookups.
    auto base_values = [&](const std::string& occ, int year) -> FeatureMap {
        FeatureMap f = supply.for_occupation(occ, year);
        auto it = demand.values.find({occ, year});
        if (it != demand.values.end()) {
            for (const auto& [k, v] : it->second) f[k] = v;
        }
        return f;
    };

    const auto& base_names = base_feature_names();
    const Eigen::Index n_base = static_cast<Eigen::Index>(base_names.size());

    for (Eigen::Index r = 0; r < n; ++r) {
        const auto& label = sorted[static_cast<std::size_t>(r)];
        m.occupations.push_back(label.occupation);
        m.years.push_back(label.year);
        m.labels.push_back(label.status);

        for (int lag = 0; lag <= lags; ++lag) {
            FeatureMap f = base_values(label.occupation.code, label.year - lag);
            Eigen::Index offset = n_base * lag;
            for (Eigen::Index i = 0; i < n_base; ++i) {
                auto it = f.find(base_names[static_cast<std::size_t>(i)]);
                if (it != f.end()) m.values(r, offset + i) = it->second;
            }
        }
        for (int lag = 1; lag <= lags; ++lag) {
            auto it = label_map.find({label.occupation.code, label.year - lag});
            if (it != label_map.end()) {
                Eigen::Index col = n_base * (lags + 1) + (lag - 1);
                m.values(r, col) = static_cast<double>(corpus::status_to_int(it->second));
            }
        }
    }
    return result;
}

std::pair<std::vector<JobAd>, std::vector<std::string>> remap_ads_to_tracked(
    std::vector<JobAd> ads, const std::vector<ShortageLabel>& labels) {
    std::set<std::string> tracked;
    std::map<std::string, std::vector<std::string>> by_unit;
    for (const auto& l : labels) {
        if (tracked.insert(l.occupation.code).second) {
            by_unit[l.occupation.prefix(4)].push_back(l.occupation.code);
        }
    }
    std::vector<std::string> warnings;
    std::set<std::string> warned;
    for (auto& ad : ads) {
        if (tracked.count(ad.occupation.code)) continue;
        auto it = by_unit.find(ad.occupation.prefix(4));
        if (it != by_unit.end() && it->second.size() == 1) {
            if (warned.insert(ad.occupation.code).second) {
                warnings.push_back("occupation " + ad.occupation.code +
                                   " remapped to tracked sibling " + it->second.front());
            }
            ad.occupation.code = it->second.front();
        }
    }
    return {std::move(ads), std::move(warnings)};
}

std::pair<DesignMatrix, DesignMatrix> temporal_split(const DesignMatrix& matrix,
                                                     int train_end_year) {
    std::vector<std::uint32_t> train_idx, test_idx;
    for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
        if (matrix.years[static_cast<std::size_t>(r)] <= train_end_year) {
            train_idx.push_back(static_cast<std::uint32_t>(r));
        } else {
            test_idx.push_back(static_cast<std::uint32_t>(r));
        }
    }
    if (train_idx.empty() || test_idx.empty()) {
        throw ValidationError("temporal_split at " + std::to_string(train_end_year) +
                              " leaves an empty side");
    }
    return {matrix.select_rows(train_idx), matrix.select_rows(test_idx)};
}

void write_design_matrix_csv(const std::string& path, const DesignMatrix& matrix) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << "occupation_code,year,label";
    for (const auto& spec : matrix.order.specs) out << "," << spec.name;
    out << "\n";
    for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
        std::size_t i = static_cast<std::size_t>(r);
        out << matrix.occupations[i].code << "," << matrix.years[i] << ","
            << corpus::status_to_string(matrix.labels[i]);
        for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
            double v = matrix.values(r, c);
            out << ",";
            if (!std::isnan(v)) out << csv::format_double(v);
        }
        out << "\n";
    }
}

namespace {

nlohmann::json spec_to_json(const FeatureSpec& spec) {
    return {{"name", spec.name},
            {"class", feature_class_to_string(spec.cls)},
            {"origin", feature_class_to_string(spec.origin)},
            {"lag", spec.lag}};
}

FeatureSpec spec_from_json(const nlohmann::json& j) {
    return {j.at("name").get<std::string>(),
            feature_class_from_string(j.at("class").get<std::string>()),
            feature_class_from_string(j.at("origin").get<std::string>()),
            j.at("lag").get<int>()};
}

}  // namespace

void write_feature_order_json(const std::string& path, const FeatureOrder& order) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& spec : order.specs) j.push_back(spec_to_json(spec));
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

FeatureOrder load_feature_order_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    FeatureOrder order;
    for (const auto& item : j) order.specs.push_back(spec_from_json(item));
    return order;
}

DesignMatrix load_design_matrix(const std::string& csv_path, const std::string& order_path) {
    DesignMatrix m;
    m.order = load_feature_order_json(order_path);

    std::vector<std::string> header = {"occupation_code", "year", "label"};
    for (const auto& spec : m.order.specs) header.push_back(spec.name);
    auto rows = csv::read_file(csv_path, header);

    m.values.resize(static_cast<Eigen::Index>(rows.size()), m.order.size());
    m.values.setConstant(kNaN);
    Eigen::Index r = 0;
    for (const auto& row : rows) {
        if (row.fields.size() != header.size()) {
            throw ValidationError("design matrix line " + std::to_string(row.line_number) +
                                  ": wrong field count");
        }
        auto occ = OccupationCode::parse(row.fields[0]);
        auto year = csv::parse_int(row.fields[1]);
        auto status = corpus::status_from_string(row.fields[2]);
        if (!occ || !year || !status) {
            throw ValidationError("design matrix line " + std::to_string(row.line_number) +
                                  ": bad key fields");
        }
        m.occupations.push_back(*occ);
        m.years.push_back(static_cast<int>(*year));
        m.labels.push_back(*status);
        for (Eigen::Index c = 0; c < m.order.size(); ++c) {
            const auto& field = row.fields[static_cast<std::size_t>(c) + 3];
            if (field.empty()) continue;
            auto v = csv::parse_double(field);
            if (!v) {
                throw ValidationError("design matrix line " + std::to_string(row.line_number) +
                                      ": bad value '" + field + "'");
            }
            m.values(r, c) = *v;
        }
        ++r;
    }
    return m;
}

}  // namespace shortcast::features
