#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "schottky/campaign.hpp"
#include "schottky/classicalizer.hpp"
#include "schottky/exponent.hpp"
#include "schottky/group_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitExhausted = 4;

void print_warning(const char* message) { std::cerr << "warning: " << message << "\n"; }

int exit_code_for(const schottky::Error& e) {
    switch (e.code()) {
        case schottky::errc::parse_error:
        case schottky::errc::io_error:
        case schottky::errc::bad_config:
            return kExitParse;
        default:
            return kExitDegenerate;
    }
}

std::string real_str(double x) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12g", x);
    return buffer;
}

int cmd_bound(const std::string& path, int grid, int wordLength) {
    const schottky::MarkedGroup pair = schottky::parse_group_file(path);
    const std::vector<schottky::ClassifiedMap> gens{pair.alpha, pair.beta};
    const schottky::ExponentBound bound = schottky::best_basepoint_bound(gens, grid);
    std::cout << "d_star " << real_str(bound.dStar) << "\n";
    for (const auto& [name, displacement] : bound.witnesses)
        std::cout << "displacement " << name << " " << real_str(displacement) << "\n";
    if (wordLength > 0) {
        const schottky::ExponentBound growth =
            schottky::growth_exponent_estimate(pair, wordLength);
        std::cout << "growth_estimate " << real_str(growth.dStar) << "\n";
    }
    try {
        const schottky::MarkedGroup normalized = schottky::normalize_pair(pair);
        const schottky::ZGap gap = schottky::z_gap(normalized);
        std::cout << "z_gap " << real_str(gap.zPair) << "\n";
    } catch (const schottky::Error& e) {
        std::cout << "z_gap undefined (" << e.what() << ")\n";
    }
    return kExitOk;
}

int cmd_classicalize(const std::string& path, int budget) {
    const schottky::MarkedGroup pair = schottky::parse_group_file(path);
    schottky::ClassicalizerConfig config;
    config.budget = budget;
    const schottky::SearchReport report = schottky::classicalize(pair, config);
    if (report.certified) {
        std::cout << "certified after " << report.iterations << " iterations, min margin "
                  << real_str(report.certificate->minMargin) << "\n";
        for (const auto& circle : report.certificate->circles) {
            std::cout << "circle " << schottky::to_string(circle.owner) << " center "
                      << real_str(circle.center.real()) << "," << real_str(circle.center.imag())
                      << " radius " << real_str(circle.radius) << "\n";
        }
        std::cout << "moves";
        for (const auto& [move, score] : report.trace)
            std::cout << " " << schottky::to_string(move.kind)
                      << (move.annotation.empty() ? "" : ":" + move.annotation);
        std::cout << "\n";
        return kExitOk;
    }
    std::cout << "exhausted after " << report.iterations << " iterations, best margin "
              << real_str(report.scores.empty() ? 0.0 : report.scores.back()) << "\n";
    return kExitExhausted;
}

int cmd_diagnose(const std::string& path, const std::string& idName, long k, long l,
                 const std::map<std::string, double>& constants) {
    const schottky::MarkedGroup pair = schottky::parse_group_file(path);
    const schottky::MarkedGroup normalized = schottky::normalize_pair(pair);
    const schottky::InequalityId id = schottky::inequality_from_string(idName);
    const schottky::DiagnosticReport report =
        schottky::diagnostic_inequality(id, normalized, k, l, constants);
    std::cout << "inequality " << schottky::to_string(report.id) << "\n";
    std::cout << "lhs " << real_str(report.lhs) << "\n";
    if (id == schottky::InequalityId::fix_bound_2)
        std::cout << "mid " << real_str(report.mid) << "\n";
    std::cout << "rhs " << real_str(report.rhs) << "\n";
    std::cout << (report.satisfied ? "satisfied" : "violated") << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    schottky::set_condition_warning_handler(&print_warning);

    CLI::App app{"Rank-2 Schottky group toolkit: displacement bounds on the critical "
                 "exponent, classical-marking certificates and generator-selection search"};
    app.require_subcommand(1);

    std::string path;
    int grid = 1;
    int boundWordLength = 0;
    auto* bound = app.add_subcommand("bound", "Certified lower bound on the critical exponent");
    bound->add_option("file", path, "group file")->required();
    bound->add_option("--grid", grid, "basepoint grid resolution (1 = basepoint j)");
    bound->add_option("--word-length", boundWordLength,
                      "also print the word-growth estimate at this length");

    int budget = 500;
    auto* classicalize =
        app.add_subcommand("classicalize", "Search for a classical marking certificate");
    classicalize->add_option("file", path, "group file")->required();
    classicalize->add_option("--budget", budget, "search iteration budget");

    schottky::ExperimentConfig config;
    std::string traceScale = "10:1000";
    auto* campaign = app.add_subcommand("campaign", "Seeded experiment sweep, CSV output");
    campaign->add_option("--seed", config.seed, "master seed");
    campaign->add_option("--trials", config.trials, "number of trials")->required();
    campaign->add_option("--trace-scale", traceScale, "LO:HI sweep range for |tr beta|");
    campaign->add_option("--out", config.outputPath, "CSV output path")->required();
    campaign->add_option("--budget", config.budget, "classicalizer budget per trial");
    campaign->add_option("--word-length", config.wordLength, "growth-estimate word length");
    campaign->add_option("--grid", config.basepointGrid, "basepoint grid resolution");
    campaign->add_option("--min-z-gap", config.minZGap, "sampler floor on the z-gap");
    campaign->add_option("--threads", config.threads, "worker threads (0 = hardware)");
    campaign->add_flag("--deterministic", config.deterministic,
                       "suppress the timestamp header for byte-identical reruns");

    std::string inequalityId = "fix-trace";
    long wordK = 1, wordL = 0;
    double rho = 1.0, delta = 1.0, sigma1 = 1.0, sigma2 = 1.0, kappa = 1.0, dExp = 0.1;
    auto* diagnose = app.add_subcommand("diagnose", "Evaluate an asymptotic inequality");
    diagnose->add_option("file", path, "group file")->required();
    diagnose->add_option("--id", inequalityId, "prop-trace|fix-trace|fix-bound-1|2-tr-fixed|"
                                               "fix-bound-2|eq-identity");
    diagnose->add_option("--k", wordK, "power k of the word alpha^k beta alpha^l");
    diagnose->add_option("--l", wordL, "power l of the word alpha^k beta alpha^l");
    diagnose->add_option("--rho", rho, "constant rho");
    diagnose->add_option("--delta", delta, "constant delta");
    diagnose->add_option("--sigma1", sigma1, "constant sigma1");
    diagnose->add_option("--sigma2", sigma2, "constant sigma2");
    diagnose->add_option("--kappa", kappa, "constant kappa");
    diagnose->add_option("--D", dExp, "critical-exponent stand-in for prop-trace");

    CLI11_PARSE(app, argc, argv);

    try {
        if (bound->parsed()) return cmd_bound(path, grid, boundWordLength);
        if (classicalize->parsed()) return cmd_classicalize(path, budget);
        if (campaign->parsed()) {
            const auto colon = traceScale.find(':');
            if (colon == std::string::npos)
                schottky::fail(schottky::errc::bad_config, "--trace-scale expects LO:HI");
            try {
                config.traceScaleLo = std::stod(traceScale.substr(0, colon));
                config.traceScaleHi = std::stod(traceScale.substr(colon + 1));
            } catch (const std::exception&) {
                schottky::fail(schottky::errc::bad_config,
                               "--trace-scale expects numeric LO:HI, got '" + traceScale + "'");
            }
            const schottky::CampaignResult result = schottky::run_campaign(config);
            std::cout << schottky::campaign_summary_json(config, result) << "\n";
            return kExitOk;
        }
        if (diagnose->parsed()) {
            const std::map<std::string, double> constants{
                {"rho", rho},     {"delta", delta}, {"sigma1", sigma1},
                {"sigma2", sigma2}, {"kappa", kappa}, {"D", dExp},
            };
            return cmd_diagnose(path, inequalityId, wordK, wordL, constants);
        }
    } catch (const schottky::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
