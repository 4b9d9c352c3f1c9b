#include "shortcast/skills.hpp"

#include <algorithm>
#include <fstream>

namespace shortcast::skills {

SkillCorpusIndex build_index(std::span<const JobAd> ads) {
    if (ads.empty()) throw ValidationError("build_index: empty corpus");
    SkillCorpusIndex index;
    for (const auto& ad : ads) {
        if (ad.skills.empty()) throw ValidationError("build_index: ad without skills: " + ad.ad_id);
        index.per_job_sizes[ad.ad_id] = static_cast<std::int64_t>(ad.skills.size());
        index.total_mentions += static_cast<std::int64_t>(ad.skills.size());
        for (const auto& s : ad.skills) index.per_skill_totals[s]++;
        index.per_occupation_year[{ad.occupation.code, ad.year}].push_back(&ad);
    }
    return index;
}

double rca(const SkillCorpusIndex& index, const JobAd& job, const std::string& skill) {
    auto skill_it = index.per_skill_totals.find(skill);
    if (skill_it == index.per_skill_totals.end()) {
        throw ValidationError("rca: skill not in corpus: " + skill);
    }
    if (!std::binary_search(job.skills.begin(), job.skills.end(), skill)) return 0.0;
    auto job_it = index.per_job_sizes.find(job.ad_id);
    if (job_it == index.per_job_sizes.end()) {
        throw ValidationError("rca: job not in index: " + job.ad_id);
    }
    double job_share = 1.0 / static_cast<double>(job_it->second);
    double corpus_share = static_cast<double>(skill_it->second) /
                          static_cast<double>(index.total_mentions);
    return job_share / corpus_share;
}

std::vector<SkillImportanceRecord> occupation_skill_weights(const SkillCorpusIndex& index,
                                                            const OccupationCode& occupation,
                                                            int year) {
    auto group_it = index.per_occupation_year.find({occupation.code, year});
    if (group_it == index.per_occupation_year.end() || group_it->second.empty()) {
        throw ValidationError("occupation_skill_weights: no ads for " + occupation.code + "/" +
                              std::to_string(year));
    }
    const auto& jobs = group_it->second;

    // Jobs lacking a skill contribute 0 to its mean, so the sum only needs the
    // jobs that do list it; the divisor stays |J_o|.
    std::map<std::string, SkillImportanceRecord> by_skill;
    for (const JobAd* job : jobs) {
        for (const auto& s : job->skills) {
            auto& rec = by_skill[s];
            if (rec.skill.empty()) {
                rec.skill = s;
                rec.occupation = occupation;
                rec.year = year;
            }
            rec.frequency++;
            rec.mean_rca += rca(index, *job, s);
        }
    }
    std::vector<SkillImportanceRecord> records;
    records.reserve(by_skill.size());
    for (auto& [_, rec] : by_skill) {
        rec.mean_rca /= static_cast<double>(jobs.size());
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<SkillImportanceRecord> top_skills(std::vector<SkillImportanceRecord> records,
                                              RankMode mode, std::size_t k,
                                              std::int64_t min_yearly_count) {
    if (mode == RankMode::rca) {
        std::erase_if(records, [&](const SkillImportanceRecord& r) {
            return r.frequency < min_yearly_count;
        });
        std::sort(records.begin(), records.end(),
                  [](const SkillImportanceRecord& a, const SkillImportanceRecord& b) {
                      if (a.mean_rca != b.mean_rca) return a.mean_rca > b.mean_rca;
                      return a.skill < b.skill;
                  });
    } else {
        std::sort(records.begin(), records.end(),
                  [](const SkillImportanceRecord& a, const SkillImportanceRecord& b) {
                      if (a.frequency != b.frequency) return a.frequency > b.frequency;
                      return a.skill < b.skill;
                  });
    }
    if (records.size() > k) records.resize(k);
    return records;
}

void write_skill_rankings_csv(const std::string& path, std::span<const RankedSkillRow> rows) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << "occupation_code,year,rank,skill,frequency,mean_rca,mode\n";
    for (const auto& row : rows) {
        out << row.occupation.code << "," << row.year << "," << row.rank << ","
            << row.record.skill << "," << row.record.frequency << ","
            << csv::format_double(row.record.mean_rca) << ","
            << (row.mode == RankMode::rca ? "rca" : "frequency") << "\n";
    }
}

}  // namespace shortcast::skills
