#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "shortcast/corpus.hpp"

namespace shortcast::skills {

using corpus::JobAd;
using corpus::OccupationCode;

// Corpus-wide mention counts backing the RCA denominators, plus the per
// occupation-year job groups the occupation weights average over.
struct SkillCorpusIndex {
    std::int64_t total_mentions = 0;                       // sum over (job, skill) pairs
    std::map<std::string, std::int64_t> per_skill_totals;  // jobs mentioning each skill
    std::map<std::string, std::int64_t> per_job_sizes;     // skills per ad_id
    std::map<std::pair<std::string, int>, std::vector<const JobAd*>> per_occupation_year;
};

SkillCorpusIndex build_index(std::span<const JobAd> ads);

// Share of the skill within the ad, normalized by the skill's share of all
// mentions in the corpus. 0 when the ad does not list the skill; throws if
// the skill is absent from the whole corpus.
double rca(const SkillCorpusIndex& index, const JobAd& job, const std::string& skill);

struct SkillImportanceRecord {
    std::string skill;
    OccupationCode occupation;
    int year = 0;
    std::int64_t frequency = 0;  // ads of this occupation-year listing the skill
    double mean_rca = 0.0;       // mean over all ads of the group, zeros included
};

std::vector<SkillImportanceRecord> occupation_skill_weights(const SkillCorpusIndex& index,
                                                            const OccupationCode& occupation,
                                                            int year);

enum class RankMode { frequency, rca };

// rca mode first drops skills seen fewer than min_yearly_count times in the
// group's year; frequency mode ranks raw counts. Ties break on skill name.
std::vector<SkillImportanceRecord> top_skills(std::vector<SkillImportanceRecord> records,
                                              RankMode mode, std::size_t k,
                                              std::int64_t min_yearly_count = 5);

struct RankedSkillRow {
    OccupationCode occupation;
    int year = 0;
    int rank = 0;
    SkillImportanceRecord record;
    RankMode mode;
};

void write_skill_rankings_csv(const std::string& path, std::span<const RankedSkillRow> rows);

}  // namespace shortcast::skills
