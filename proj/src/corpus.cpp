#include "shortcast/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

namespace shortcast {
namespace csv {

std::vector<Row> read_file(const std::string& path,
                           const std::vector<std::string>& expected_header, char delim) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty file: " + path);
    auto header = split(line, delim);
    if (header != expected_header) {
        throw ValidationError("unexpected header in " + path + ": got '" + join(header) +
                              "', expected '" + join(expected_header) + "'");
    }
    std::vector<Row> rows;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (trim(line).empty()) continue;
        rows.push_back(Row{line_number, split(line, delim)});
    }
    return rows;
}

}  // namespace csv

namespace corpus {

std::optional<OccupationCode> OccupationCode::parse(std::string_view text) {
    std::string t = csv::trim(text);
    std::size_t n = t.size();
    if (n != 1 && n != 2 && n != 3 && n != 4 && n != 6) return std::nullopt;
    for (char c : t) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    }
    return OccupationCode{std::move(t)};
}

std::string status_to_string(ShortageStatus s) {
    return s == ShortageStatus::InShortage ? "in_shortage" : "not_in_shortage";
}

std::optional<ShortageStatus> status_from_string(std::string_view text) {
    std::string t = csv::trim(text);
    std::transform(t.begin(), t.end(), t.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (t == "in_shortage") return ShortageStatus::InShortage;
    if (t == "not_in_shortage") return ShortageStatus::NotInShortage;
    return std::nullopt;
}

const std::vector<std::string>& supply_metric_names() {
    static const std::vector<std::string> names = {
        "unit_total_employed",
        "unit_total_hours_worked",
        "sub_ft_employed",
        "sub_pt_employed",
        "sub_total_employed",
        "sub_ft_hours_worked",
        "sub_pt_hours_worked",
        "sub_total_hours_worked",
        "major_ft_employed",
        "major_pt_employed",
        "major_total_employed",
        "major_ft_hours_worked",
        "major_pt_hours_worked",
        "major_total_hours_worked",
        "major_unemployed_ft_seekers",
        "major_unemployed_pt_seekers",
        "major_unemployed_total_seekers",
        "major_total_weeks_searching",
        "major_underemployed_total",
        "major_underemployed_ratio",
    };
    return names;
}

bool is_ratio_metric(const std::string& metric) { return metric == "major_underemployed_ratio"; }

CodeLevel metric_level(const std::string& metric) {
    if (metric.rfind("unit_", 0) == 0) return CodeLevel::unit;
    if (metric.rfind("sub_", 0) == 0) return CodeLevel::sub_major;
    return CodeLevel::major;
}

std::string normalize_skill(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool in_space = false;
    for (char c : raw) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_space = true;
            continue;
        }
        if (in_space && !out.empty()) out.push_back(' ');
        in_space = false;
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

namespace {

const std::vector<std::string> kAdsHeader = {
    "ad_id", "year",           "quarter",          "occupation_code", "salary_median",
    "salary_avg", "education_years", "experience_years", "skills"};
const std::vector<std::string> kTaxonomyHeader = {"skill", "category"};
const std::vector<std::string> kSupplyHeader = {"occupation_code", "year", "quarter", "metric",
                                                "value"};
const std::vector<std::string> kLabelsHeader = {"occupation_code", "year", "status"};

std::optional<double> parse_optional_field(const std::string& field, bool non_negative,
                                           std::string& err) {
    if (field.empty()) return std::nullopt;
    auto v = csv::parse_double(field);
    if (!v) {
        err = "not a number: '" + field + "'";
        return std::nullopt;
    }
    if (non_negative && *v < 0) {
        err = "negative value: '" + field + "'";
        return std::nullopt;
    }
    return v;
}

std::optional<SkillCategory> category_from_string(std::string_view text) {
    std::string t = csv::trim(text);
    if (t == "specialized") return SkillCategory::specialized;
    if (t == "baseline") return SkillCategory::baseline;
    if (t == "software") return SkillCategory::software;
    return std::nullopt;
}

std::string category_to_string(SkillCategory c) {
    switch (c) {
        case SkillCategory::specialized: return "specialized";
        case SkillCategory::baseline: return "baseline";
        case SkillCategory::software: return "software";
        default: return "uncategorized";
    }
}

}  // namespace

JobAdsParse parse_job_ads(const std::string& ads_path, const std::string& taxonomy_path,
                          const ParseOptions& opts) {
    JobAdsParse out;

    for (const auto& row : csv::read_file(taxonomy_path, kTaxonomyHeader)) {
        if (row.fields.size() != 2) {
            throw ValidationError("taxonomy line " + std::to_string(row.line_number) +
                                  ": expected 2 fields");
        }
        auto cat = category_from_string(row.fields[1]);
        if (!cat) {
            throw ValidationError("taxonomy line " + std::to_string(row.line_number) +
                                  ": unknown category '" + row.fields[1] + "'");
        }
        out.taxonomy.add(normalize_skill(row.fields[0]), *cat);
    }

    std::set<std::string> seen_ids;
    for (const auto& row : csv::read_file(ads_path, kAdsHeader)) {
        auto reject = [&](std::string reason) {
            out.rejections.push_back({row.line_number, std::move(reason)});
        };
        if (row.fields.size() != kAdsHeader.size()) {
            reject("expected " + std::to_string(kAdsHeader.size()) + " fields, got " +
                   std::to_string(row.fields.size()));
            continue;
        }
        JobAd ad;
        ad.ad_id = row.fields[0];
        if (ad.ad_id.empty()) {
            reject("empty ad_id");
            continue;
        }
        if (!seen_ids.insert(ad.ad_id).second) {
            reject("duplicate ad_id '" + ad.ad_id + "'");
            continue;
        }
        auto year = csv::parse_int(row.fields[1]);
        if (!year || *year < opts.min_year || *year > opts.max_year) {
            reject("bad year '" + row.fields[1] + "'");
            continue;
        }
        ad.year = static_cast<int>(*year);
        auto quarter = csv::parse_int(row.fields[2]);
        if (!quarter || *quarter < 1 || *quarter > 4) {
            reject("bad quarter '" + row.fields[2] + "'");
            continue;
        }
        ad.quarter = static_cast<int>(*quarter);
        auto occ = OccupationCode::parse(row.fields[3]);
        if (!occ || occ->level() != CodeLevel::occupation) {
            reject("bad 6-digit occupation code '" + row.fields[3] + "'");
            continue;
        }
        ad.occupation = *occ;

        std::string err;
        ad.salary_median = parse_optional_field(row.fields[4], true, err);
        if (!err.empty()) {
            reject("salary_median: " + err);
            continue;
        }
        ad.salary_avg = parse_optional_field(row.fields[5], true, err);
        if (!err.empty()) {
            reject("salary_avg: " + err);
            continue;
        }
        ad.education_years = parse_optional_field(row.fields[6], true, err);
        if (!err.empty()) {
            reject("education_years: " + err);
            continue;
        }
        ad.experience_years = parse_optional_field(row.fields[7], true, err);
        if (!err.empty()) {
            reject("experience_years: " + err);
            continue;
        }

        std::set<std::string> skills;
        for (const auto& raw : csv::split(row.fields[8], ';')) {
            std::string s = normalize_skill(raw);
            if (!s.empty()) skills.insert(std::move(s));
        }
        if (skills.empty()) {
            seen_ids.erase(ad.ad_id);
            reject("empty skill set");
            continue;
        }
        ad.skills.assign(skills.begin(), skills.end());
        out.ads.push_back(std::move(ad));
    }

    std::sort(out.ads.begin(), out.ads.end(), [](const JobAd& a, const JobAd& b) {
        return std::tie(a.occupation.code, a.year, a.ad_id) <
               std::tie(b.occupation.code, b.year, b.ad_id);
    });
    return out;
}

LaborSupplyParse parse_labor_supply(const std::string& path, const ParseOptions& opts) {
    LaborSupplyParse out;
    const auto& vocab = supply_metric_names();
    std::set<std::tuple<std::string, int, int, std::string>> seen;

    for (const auto& row : csv::read_file(path, kSupplyHeader)) {
        auto reject = [&](std::string reason) {
            out.rejections.push_back({row.line_number, std::move(reason)});
        };
        if (row.fields.size() != kSupplyHeader.size()) {
            reject("expected 5 fields");
            continue;
        }
        LaborSupplyRecord rec;
        auto occ = OccupationCode::parse(row.fields[0]);
        if (!occ) {
            reject("bad occupation code '" + row.fields[0] + "'");
            continue;
        }
        rec.occupation = *occ;
        auto year = csv::parse_int(row.fields[1]);
        if (!year || *year < opts.min_year || *year > opts.max_year) {
            reject("bad year '" + row.fields[1] + "'");
            continue;
        }
        rec.year = static_cast<int>(*year);
        auto quarter = csv::parse_int(row.fields[2]);
        if (!quarter || *quarter < 1 || *quarter > 4) {
            reject("bad quarter '" + row.fields[2] + "'");
            continue;
        }
        rec.quarter = static_cast<int>(*quarter);
        rec.metric = row.fields[3];
        if (std::find(vocab.begin(), vocab.end(), rec.metric) == vocab.end()) {
            reject("unknown metric '" + rec.metric + "'");
            continue;
        }
        if (metric_level(rec.metric) != rec.occupation.level()) {
            reject("metric '" + rec.metric + "' does not match code level of '" +
                   rec.occupation.code + "'");
            continue;
        }
        auto value = csv::parse_double(row.fields[4]);
        if (!value) {
            reject("bad value '" + row.fields[4] + "'");
            continue;
        }
        rec.value = *value;
        if (rec.value < 0) {
            reject("negative value");
            continue;
        }
        if (is_ratio_metric(rec.metric) && rec.value > 1.0) {
            reject("ratio metric outside [0,1]");
            continue;
        }
        if (!seen.insert({rec.occupation.code, rec.year, rec.quarter, rec.metric}).second) {
            throw ValidationError("duplicate labor supply key at line " +
                                  std::to_string(row.line_number) + ": (" + rec.occupation.code +
                                  ", " + std::to_string(rec.year) + ", q" +
                                  std::to_string(rec.quarter) + ", " + rec.metric + ")");
        }
        out.records.push_back(std::move(rec));
    }
    return out;
}

std::vector<ShortageLabel> parse_shortage_labels(const std::string& path,
                                                 const ParseOptions& opts) {
    std::vector<ShortageLabel> labels;
    std::set<std::pair<std::string, int>> seen;
    for (const auto& row : csv::read_file(path, kLabelsHeader)) {
        auto fatal = [&](const std::string& reason) -> ValidationError {
            return ValidationError("shortage labels line " + std::to_string(row.line_number) +
                                   ": " + reason);
        };
        if (row.fields.size() != kLabelsHeader.size()) throw fatal("expected 3 fields");
        ShortageLabel label;
        auto occ = OccupationCode::parse(row.fields[0]);
        if (!occ) throw fatal("bad occupation code '" + row.fields[0] + "'");
        label.occupation = *occ;
        auto year = csv::parse_int(row.fields[1]);
        if (!year || *year < opts.min_year || *year > opts.max_year) {
            throw fatal("bad year '" + row.fields[1] + "'");
        }
        label.year = static_cast<int>(*year);
        auto status = status_from_string(row.fields[2]);
        if (!status) throw fatal("unknown status '" + row.fields[2] + "'");
        label.status = *status;
        if (!seen.insert({label.occupation.code, label.year}).second) {
            throw fatal("duplicate (occupation, year)");
        }
        labels.push_back(std::move(label));
    }
    return labels;
}

const std::map<char, std::string>& anzsco_major_groups() {
    static const std::map<char, std::string> groups = {
        {'1', "Managers"},
        {'2', "Professionals"},
        {'3', "Technicians and Trades Workers"},
        {'4', "Community and Personal Service Workers"},
        {'5', "Clerical and Administrative Workers"},
        {'6', "Sales Workers"},
        {'7', "Machinery Operators and Drivers"},
        {'8', "Labourers"},
    };
    return groups;
}

ProfileReport profile_dataset(std::span<const ShortageLabel> labels,
                              const std::map<char, std::string>& major_names) {
    if (labels.empty()) throw ValidationError("profile_dataset: no labels");

    ProfileReport report;
    report.major_group_names = major_names;

    // (occupation -> year -> status), ordered for deterministic scans.
    std::map<std::string, std::map<int, ShortageStatus>> by_occ;
    for (const auto& l : labels) by_occ[l.occupation.code][l.year] = l.status;
    report.n_occupations = static_cast<int>(by_occ.size());

    std::map<char, int> major_counts;
    for (const auto& [code, _] : by_occ) major_counts[code[0]]++;
    for (const auto& [group, count] : major_counts) {
        report.major_group_shares[group] =
            static_cast<double>(count) / static_cast<double>(report.n_occupations);
    }

    for (const auto& l : labels) {
        auto& yp = report.per_year[l.year];
        if (l.status == ShortageStatus::InShortage) {
            yp.in_shortage++;
        } else {
            yp.not_in_shortage++;
        }
    }

    for (const auto& [code, years] : by_occ) {
        const ShortageStatus* prev = nullptr;
        int prev_year = 0;
        int run = 0;
        for (const auto& [year, status] : years) {
            if (prev && year == prev_year + 1 && status != *prev) {
                report.per_year[year].flips++;
            }
            if (status == ShortageStatus::InShortage) {
                run++;
            } else if (run > 0) {
                report.spell_length_histogram[run]++;
                run = 0;
            }
            prev = &status;
            prev_year = year;
        }
        if (run > 0) report.spell_length_histogram[run]++;
    }
    return report;
}

namespace {

std::string opt_field(const std::optional<double>& v) {
    return v ? csv::format_double(*v) : std::string();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path);
    return out;
}

}  // namespace

void write_job_ads_csv(const std::string& path, std::span<const JobAd> ads) {
    auto out = open_out(path);
    out << csv::join(kAdsHeader) << "\n";
    for (const auto& ad : ads) {
        std::string skills;
        for (std::size_t i = 0; i < ad.skills.size(); ++i) {
            if (i) skills.push_back(';');
            skills += ad.skills[i];
        }
        out << csv::join({ad.ad_id, std::to_string(ad.year), std::to_string(ad.quarter),
                          ad.occupation.code, opt_field(ad.salary_median), opt_field(ad.salary_avg),
                          opt_field(ad.education_years), opt_field(ad.experience_years), skills})
            << "\n";
    }
}

void write_taxonomy_csv(const std::string& path, const SkillTaxonomy& taxonomy) {
    auto out = open_out(path);
    out << csv::join(kTaxonomyHeader) << "\n";
    for (const auto& [skill, cat] : taxonomy.entries()) {
        out << csv::join({skill, category_to_string(cat)}) << "\n";
    }
}

void write_labor_supply_csv(const std::string& path, std::span<const LaborSupplyRecord> records) {
    auto out = open_out(path);
    out << csv::join(kSupplyHeader) << "\n";
    for (const auto& r : records) {
        out << csv::join({r.occupation.code, std::to_string(r.year), std::to_string(r.quarter),
                          r.metric, csv::format_double(r.value)})
            << "\n";
    }
}

void write_shortage_labels_csv(const std::string& path, std::span<const ShortageLabel> labels) {
    auto out = open_out(path);
    out << csv::join(kLabelsHeader) << "\n";
    for (const auto& l : labels) {
        out << csv::join({l.occupation.code, std::to_string(l.year), status_to_string(l.status)})
            << "\n";
    }
}

void write_rejections(const std::string& path, std::span<const Rejection> rejections) {
    auto out = open_out(path);
    out << "line_number,reason\n";
    for (const auto& r : rejections) {
        out << r.line_number << "," << r.reason << "\n";
    }
}

}  // namespace corpus
}  // namespace shortcast
