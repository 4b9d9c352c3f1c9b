#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "shortcast/corpus.hpp"

namespace shortcast::synth {

using corpus::JobAd;
using corpus::LaborSupplyRecord;
using corpus::ShortageLabel;
using corpus::SkillTaxonomy;

struct SynthParams {
    int n_occupations = 132;
    int year_min = 2012;
    int year_max = 2018;
    int ads_min = 30;   // ads per occupation-year
    int ads_max = 60;
    double shortage_stationary_share = 206.0 / 924.0;
    // Chance a given occupation flips status between consecutive years; with
    // the defaults the expected flips per year is n_occupations * 0.1 = 13.2.
    double flip_probability = 0.10;
    // Effect sizes in units of the feature's noise standard deviation. Under
    // shortage: hours worked and salary shift up, education and experience
    // requirements shift down.
    double effect_hours = 0.5;
    double effect_salary = 0.5;
    double effect_education = 0.5;
    double effect_experience = 0.5;
    double top_two_share = 0.94;           // occupation mass in the top two major groups
    double head_skill_probability = 0.6;   // ubiquitous skill inclusion per ad
    int specialized_pool = 12;             // specialized skills per occupation
    int specialized_min = 2;
    int specialized_max = 4;
    double software_probability = 0.08;    // per software skill per ad
    double baseline_extra_probability = 0.2;
    double optional_dropout = 0.03;        // chance an optional ad field is blank
    std::uint64_t seed = 7;

    void validate() const;
};

struct SynthDataset {
    std::vector<JobAd> ads;
    SkillTaxonomy taxonomy;
    std::vector<LaborSupplyRecord> supply;
    std::vector<ShortageLabel> labels;
    nlohmann::json manifest;  // params plus realized counts
};

// Labels follow a two-state Markov chain per occupation whose stationary
// share and flip rate come from the params; ads and supply series carry the
// configured shortage effects. Same seed, same bytes.
SynthDataset generate(const SynthParams& params);

// Writes job_ads.csv, skill_taxonomy.csv, labor_supply.csv,
// shortage_labels.csv and synth_manifest.json into the directory.
void write_dataset(const SynthDataset& dataset, const std::string& dir);

}  // namespace shortcast::synth
