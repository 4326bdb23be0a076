#include "schottky/campaign.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <thread>

#include "json.hpp"

namespace schottky {

namespace {

std::string real17(double x) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", x);
    return buffer;
}

std::string annotations_of(const SearchReport& report) {
    std::string out;
    std::set<std::string> seen;
    int kept = 0;
    for (const auto& [move, score] : report.trace) {
        (void)score;
        if (move.annotation.empty() || seen.count(move.annotation)) continue;
        seen.insert(move.annotation);
        if (kept++) out += ';';
        out += move.annotation;
        if (kept >= 8) break;
    }
    return out;
}

TrialRecord run_trial(const ExperimentConfig& config, int trialId, MarkedGroup& pairOut,
                      MarkedGroup& finalPairOut, std::optional<ClassicalCertificate>& certOut) {
    TrialRecord row;
    row.trialId = trialId;
    Rng rng(Rng::derive(config.seed, static_cast<std::uint64_t>(trialId)));

    SampleParams params;
    params.traceScale = rng.log_uniform(config.traceScaleLo, config.traceScaleHi);
    params.multiplierLo = config.multiplierLo;
    params.multiplierHi = config.multiplierHi;
    params.minZGap = config.minZGap;
    const MarkedGroup pair = sample_group(rng, params);
    pairOut = pair;
    row.inputDigest = group_digest(pair);

    try {
        row.zGap = z_gap(pair).zPair;
    } catch (const Error&) {
        row.zGap = 0.0;
    }

    const std::vector<ClassifiedMap> gens{pair.alpha, pair.beta};
    row.dStar = best_basepoint_bound(gens, config.basepointGrid).dStar;
    row.growthEstimate = growth_exponent_estimate(pair, config.wordLength).dStar;

    ClassicalizerConfig searchConfig;
    searchConfig.budget = config.budget;
    try {
        const SearchReport report = classicalize(pair, searchConfig);
        row.certified = report.certified;
        row.iterations = report.iterations;
        row.minMargin = report.certified ? report.certificate->minMargin
                                         : (report.scores.empty() ? 0.0 : report.scores.back());
        row.caseAnnotations = annotations_of(report);
        finalPairOut = report.finalPair;
        certOut = report.certificate;
    } catch (const Error& e) {
        row.certified = false;
        row.iterations = 0;
        row.minMargin = 0.0;
        row.caseAnnotations = std::string("error:") + to_string(e.code());
        certOut = std::nullopt;
    }
    return row;
}

} // namespace

ExponentBound best_basepoint_bound(const std::vector<ClassifiedMap>& generators, int grid) {
    ExponentBound best = hou_lower_bound(generators, UhsPoint{});
    if (grid <= 1) return best;
    for (int ih = 0; ih < grid; ++ih) {
        const double height = std::exp(-1.0 + 2.0 * ih / (grid - 1.0));
        for (int ix = 0; ix < grid; ++ix) {
            for (int iy = 0; iy < grid; ++iy) {
                const double re = -1.0 + 2.0 * ix / (grid - 1.0);
                const double im = -1.0 + 2.0 * iy / (grid - 1.0);
                const UhsPoint x{Complex(re, im), height};
                const ExponentBound bound = hou_lower_bound(generators, x);
                if (bound.dStar > best.dStar) best = bound;
            }
        }
    }
    return best;
}

std::string campaign_csv_header() {
    return "trial_id,input_digest,d_star,growth_estimate,z_gap,certified,iterations,"
           "min_margin,case_annotations";
}

std::string campaign_csv_row(const TrialRecord& row) {
    std::string out = std::to_string(row.trialId);
    out += ',';
    out += row.inputDigest;
    out += ',';
    out += real17(row.dStar);
    out += ',';
    out += real17(row.growthEstimate);
    out += ',';
    out += real17(row.zGap);
    out += ',';
    out += row.certified ? "true" : "false";
    out += ',';
    out += std::to_string(row.iterations);
    out += ',';
    out += real17(row.minMargin);
    out += ',';
    out += row.caseAnnotations;
    return out;
}

std::string campaign_summary_json(const ExperimentConfig& config, const CampaignResult& result) {
    nlohmann::json summary;
    summary["schema"] = "schottky-campaign-summary-v1";
    summary["seed"] = config.seed;
    summary["trials"] = config.trials;
    summary["trace_scale"] = {config.traceScaleLo, config.traceScaleHi};
    summary["budget"] = config.budget;
    summary["word_length"] = config.wordLength;
    summary["min_z_gap"] = config.minZGap;
    int certified = 0;
    for (const TrialRecord& row : result.rows) certified += row.certified ? 1 : 0;
    summary["certified"] = certified;
    summary["exhausted"] = static_cast<int>(result.rows.size()) - certified;
    if (result.anyCertified)
        summary["frontier"]["max_dstar_certified"] = result.maxDStarCertified;
    else
        summary["frontier"]["max_dstar_certified"] = nullptr;
    if (result.anyExhausted)
        summary["frontier"]["min_dstar_exhausted"] = result.minDStarExhausted;
    else
        summary["frontier"]["min_dstar_exhausted"] = nullptr;
    return summary.dump(2);
}

CampaignResult run_campaign(const ExperimentConfig& config) {
    if (config.trials < 1) fail(errc::bad_config, "trials must be >= 1");
    if (!(config.traceScaleLo >= 2.1) || !(config.traceScaleHi >= config.traceScaleLo))
        fail(errc::bad_config, "trace scale range must be ordered and >= 2.1");
    if (!(config.multiplierLo > 1.0) || !(config.multiplierHi >= config.multiplierLo))
        fail(errc::bad_config, "multiplier range must be ordered and > 1");
    if (config.wordLength < 2 || config.wordLength > 14)
        fail(errc::bad_config, "word length must be in [2, 14]");
    if (config.budget < 1) fail(errc::bad_config, "budget must be >= 1");

    CampaignResult result;
    result.rows.resize(config.trials);
    result.pairs.resize(config.trials);
    result.finalPairs.resize(config.trials);
    result.certificates.resize(config.trials);

    std::ofstream csv;
    if (!config.outputPath.empty()) {
        csv.open(config.outputPath);
        if (!csv) fail(errc::io_error, "cannot write '" + config.outputPath + "'");
        csv << "# schottky-campaign v1\n";
        if (!config.deterministic) {
            const std::time_t now = std::time(nullptr);
            char stamp[32];
            std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
            csv << "# generated: " << stamp << "\n";
        }
        csv << campaign_csv_header() << "\n";
        csv.flush();
    }

    // Rows are flushed in trial order as soon as the prefix completes, so an
    // interrupted campaign leaves a usable partial CSV.
    std::mutex flushMutex;
    std::vector<char> completed(config.trials, 0);
    int flushCursor = 0;
    auto deposit = [&](int id) {
        std::lock_guard<std::mutex> lock(flushMutex);
        completed[id] = 1;
        while (flushCursor < config.trials && completed[flushCursor]) {
            if (csv.is_open()) {
                csv << campaign_csv_row(result.rows[flushCursor]) << "\n";
                csv.flush();
            }
            ++flushCursor;
        }
    };

    const int hardware = static_cast<int>(std::thread::hardware_concurrency());
    const int workers =
        std::max(1, std::min(config.threads > 0 ? config.threads : hardware, config.trials));
    std::atomic<int> nextTrial{0};
    auto worker = [&] {
        for (;;) {
            const int id = nextTrial.fetch_add(1);
            if (id >= config.trials) return;
            result.rows[id] = run_trial(config, id, result.pairs[id], result.finalPairs[id],
                                        result.certificates[id]);
            deposit(id);
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    result.maxDStarCertified = -std::numeric_limits<double>::infinity();
    result.minDStarExhausted = std::numeric_limits<double>::infinity();
    for (const TrialRecord& row : result.rows) {
        if (row.certified) {
            result.anyCertified = true;
            result.maxDStarCertified = std::max(result.maxDStarCertified, row.dStar);
        } else {
            result.anyExhausted = true;
            result.minDStarExhausted = std::min(result.minDStarExhausted, row.dStar);
        }
    }

    if (csv.is_open()) {
        if (!csv) fail(errc::io_error, "write failed for '" + config.outputPath + "'");
        csv.close();
        std::ofstream summary(config.outputPath + ".summary.json");
        if (!summary) fail(errc::io_error, "cannot write summary JSON");
        summary << campaign_summary_json(config, result) << "\n";
    }
    return result;
}

} // namespace schottky
