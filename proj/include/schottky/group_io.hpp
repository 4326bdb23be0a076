#pragma once

#include <cstdint>
#include <string>

#include "schottky/markings.hpp"

namespace schottky {

/// Deterministic RNG (splitmix64 core) with bit-exact uniform doubles, so
/// seeded runs reproduce across platforms and standard-library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    /// Derives an independent stream, e.g. per trial id.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        Rng mixer(seed ^ (0x517cc1b727220a95ull * (stream + 1)));
        return mixer.next();
    }

private:
    std::uint64_t state_;
};

/// Group file grammar: two matrices of four complex numbers "re,im" separated
/// by whitespace; the matrices are split by a '/' token or a line break, and
/// '#' starts a comment. Matrices are determinant-normalized on load; a
/// determinant far from 1 emits a condition warning.
/// Throws parse_error (with line:column), bad_determinant (|det| < 1e-8) and
/// not_loxodromic.
MarkedGroup parse_group_text(const std::string& text);
MarkedGroup parse_group_file(const std::string& path);

/// Renders a pair in the group file grammar (17 significant digits).
std::string format_group(const MarkedGroup& pair);

struct SampleParams {
    double traceScale = 100.0;     // |tr beta|; must be >= 2.1
    double multiplierLo = 1.5;     // |lambda_alpha| range, log-uniform
    double multiplierHi = 4.0;
    double fixedPointModulusLo = 0.5; // annulus for beta's fixed points
    double fixedPointModulusHi = 2.0;
    double minFixedPointGap = 0.2; // resample closer pairs
    double minZGap = 0.0;          // resample until z_gap.zPair >= this
};

/// Samples alpha = diag(lambda, 1/lambda) with log-uniform |lambda| and beta
/// from random annulus fixed points with |tr beta| = traceScale (random
/// phase). Deterministic per Rng state.
MarkedGroup sample_group(Rng& rng, const SampleParams& params);

/// FNV-1a digest of the pair's canonical serialization, as fixed-width hex.
std::string group_digest(const MarkedGroup& pair);

} // namespace schottky
