#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "shortcast/csv.hpp"

namespace shortcast::corpus {

// ANZSCO hierarchy level, derived from digit count.
enum class CodeLevel { major = 1, sub_major = 2, minor = 3, unit = 4, occupation = 6 };

// A 1/2/3/4/6-digit ANZSCO code. Prefixes of a 6-digit code name its ancestors.
struct OccupationCode {
    std::string code;

    static std::optional<OccupationCode> parse(std::string_view text);

    CodeLevel level() const { return static_cast<CodeLevel>(code.size()); }
    std::string prefix(std::size_t digits) const { return code.substr(0, digits); }
    char major_group() const { return code[0]; }

    bool operator==(const OccupationCode& o) const = default;
    auto operator<=>(const OccupationCode& o) const = default;
};

struct JobAd {
    std::string ad_id;
    int year = 0;
    int quarter = 0;  // 1..4
    OccupationCode occupation;  // 6-digit
    std::optional<double> salary_median;
    std::optional<double> salary_avg;
    std::optional<double> education_years;
    std::optional<double> experience_years;
    std::vector<std::string> skills;  // normalized, sorted, deduplicated, non-empty
};

enum class SkillCategory { specialized, baseline, software, uncategorized };

class SkillTaxonomy {
public:
    void add(std::string skill, SkillCategory cat) { map_[std::move(skill)] = cat; }
    SkillCategory category_of(const std::string& skill) const {
        auto it = map_.find(skill);
        return it == map_.end() ? SkillCategory::uncategorized : it->second;
    }
    const std::map<std::string, SkillCategory>& entries() const { return map_; }

private:
    std::map<std::string, SkillCategory> map_;
};

struct LaborSupplyRecord {
    OccupationCode occupation;  // unit, sub-major or major level
    int year = 0;
    int quarter = 0;
    std::string metric;  // one of supply_metric_names()
    double value = 0.0;
};

enum class ShortageStatus { InShortage, NotInShortage };

inline int status_to_int(ShortageStatus s) { return s == ShortageStatus::InShortage ? 1 : 0; }
inline ShortageStatus status_from_int(int v) {
    return v ? ShortageStatus::InShortage : ShortageStatus::NotInShortage;
}
std::string status_to_string(ShortageStatus s);
std::optional<ShortageStatus> status_from_string(std::string_view text);

struct ShortageLabel {
    OccupationCode occupation;
    int year = 0;
    ShortageStatus status = ShortageStatus::NotInShortage;
};

struct Rejection {
    std::size_t line_number = 0;
    std::string reason;
};

// The 20 labor-supply metric names. The prefix encodes the ANZSCO level the
// metric is reported at (unit_ -> 4 digits, sub_ -> 2, major_ -> 1).
const std::vector<std::string>& supply_metric_names();
bool is_ratio_metric(const std::string& metric);
CodeLevel metric_level(const std::string& metric);

// Normalization applied to every skill string before set insertion:
// trim, collapse internal whitespace, ASCII case-fold.
std::string normalize_skill(std::string_view raw);

struct ParseOptions {
    int min_year = 1900;
    int max_year = 2100;
};

struct JobAdsParse {
    std::vector<JobAd> ads;  // sorted by (occupation, year, ad_id)
    SkillTaxonomy taxonomy;
    std::vector<Rejection> rejections;
};

JobAdsParse parse_job_ads(const std::string& ads_path, const std::string& taxonomy_path,
                          const ParseOptions& opts = {});

struct LaborSupplyParse {
    std::vector<LaborSupplyRecord> records;
    std::vector<Rejection> rejections;
};

LaborSupplyParse parse_labor_supply(const std::string& path, const ParseOptions& opts = {});

// Fatal on any malformed row, duplicate (occupation, year) or unknown status.
std::vector<ShortageLabel> parse_shortage_labels(const std::string& path,
                                                 const ParseOptions& opts = {});

struct YearProfile {
    int in_shortage = 0;
    int not_in_shortage = 0;
    int flips = 0;  // status changes vs the previous year (0 for the first year)
};

struct ProfileReport {
    int n_occupations = 0;
    std::map<char, double> major_group_shares;        // share of occupations per major group
    std::map<char, std::string> major_group_names;
    std::map<int, YearProfile> per_year;
    std::map<int, int> spell_length_histogram;        // length of maximal InShortage runs
};

const std::map<char, std::string>& anzsco_major_groups();

ProfileReport profile_dataset(std::span<const ShortageLabel> labels,
                              const std::map<char, std::string>& major_names =
                                  anzsco_major_groups());

// Serializers for the four input formats (also used by the synthetic generator).
// Parsing a file written from parsed records is an identity.
void write_job_ads_csv(const std::string& path, std::span<const JobAd> ads);
void write_taxonomy_csv(const std::string& path, const SkillTaxonomy& taxonomy);
void write_labor_supply_csv(const std::string& path, std::span<const LaborSupplyRecord> records);
void write_shortage_labels_csv(const std::string& path, std::span<const ShortageLabel> labels);
void write_rejections(const std::string& path, std::span<const Rejection> rejections);

}  // namespace shortcast::corpus
