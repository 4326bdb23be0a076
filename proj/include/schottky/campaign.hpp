#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "schottky/classicalizer.hpp"
#include "schottky/exponent.hpp"
#include "schottky/group_io.hpp"

namespace schottky {

struct ExperimentConfig {
    std::uint64_t seed = 1;
    int trials = 100;
    double traceScaleLo = 10.0;
    double traceScaleHi = 1000.0;
    double multiplierLo = 1.5; // |lambda_alpha| sampling range
    double multiplierHi = 4.0;
    int budget = 500;
    int wordLength = 8;
    int basepointGrid = 1;       // 1 = basepoint j only
    double minZGap = 0.0;        // sampler filter on z_gap.zPair
    std::string outputPath;      // empty = no CSV written
    bool deterministic = false;  // suppress the timestamp header line
    int threads = 0;             // 0 = hardware concurrency
    std::map<std::string, double> constants; // forwarded to diagnostics users
};

struct TrialRecord {
    int trialId = 0;
    std::string inputDigest;
    double dStar = 0.0;
    double growthEstimate = 0.0;
    double zGap = 0.0;
    bool certified = false;
    int iterations = 0;
    double minMargin = 0.0;
    std::string caseAnnotations;
};

struct CampaignResult {
    std::vector<TrialRecord> rows;
    std::vector<MarkedGroup> pairs;      // per trial, pre-search
    std::vector<MarkedGroup> finalPairs; // per trial, post-search marking
    std::vector<std::optional<ClassicalCertificate>> certificates;
    double maxDStarCertified = 0.0;  // empirical frontier
    double minDStarExhausted = 0.0;  // +inf when every trial certified
    bool anyCertified = false;
    bool anyExhausted = false;
};

/// Runs `trials` independent seeded trials in a worker pool (per-trial streams
/// derived from the master seed, rows in trial order): samples a pair at a
/// log-uniform trace scale, records z-gap, the certified displacement bound,
/// the word-growth estimate and the classicalizer outcome. Writes the v1 CSV
/// and a JSON summary next to it when outputPath is set.
/// Throws bad_config for invalid configurations, io_error on write failure.
CampaignResult run_campaign(const ExperimentConfig& config);

/// CSV header line (schema v1).
std::string campaign_csv_header();

/// One CSV row (17 significant digits for reals).
std::string campaign_csv_row(const TrialRecord& row);

/// Serialized JSON summary with the empirical frontier.
std::string campaign_summary_json(const ExperimentConfig& config, const CampaignResult& result);

/// Displacement bound maximized over a coarse basepoint grid (grid = 1 keeps
/// the default basepoint j).
ExponentBound best_basepoint_bound(const std::vector<ClassifiedMap>& generators, int grid);

} // namespace schottky
