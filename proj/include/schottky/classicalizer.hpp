#pragma once

#include <optional>
#include <vector>

#include "schottky/markings.hpp"

namespace schottky {

/// The unique integer k with 1 <= |zeta| |lambda|^{2k} < |lambda|^2.
/// Throws multiplier_too_close when |lambda| - 1 <= 1e-12, out_of_range for
/// zeta at 0 or INFINITY.
long select_power_k(Complex lambda, const ComplexPoint& zeta);

/// The smallest positive integer m with 1 + 1/(m+1) <= |lambda| <= 1 + 1/m.
/// Only defined for 1 < |lambda| <= 2; throws out_of_range above 2 and
/// multiplier_too_close at the bottom.
int select_power_m(Complex lambda);

/// Minimum pairwise separation margin of the four isometric circles in the
/// generic-position frame. Negative when circles overlap; -infinity sentinel
/// when no frame yields finite circles.
double score_pair(const MarkedGroup& pair);

struct ClassicalizerConfig {
    int budget = 500;      // total move-evaluation iterations
    int plateau = 50;      // iterations without a new best before a rebase
    int maxRebases = 32;
};

struct SearchReport {
    bool certified = false;
    std::optional<ClassicalCertificate> certificate;
    MarkedGroup finalPair;
    std::vector<std::pair<Move, double>> trace; // accepted moves with scores
    int iterations = 0;
    std::vector<double> scores; // score history, one entry per iteration
};

/// Greedy best-first search over the generator-selection moves: power
/// selection k (with neighbors), the small-multiplier power m, scaling
/// conjugations balancing the circle centers, inversions and swaps restoring
/// the standard order, and diagonalized rebases on plateaus. Returns the
/// first state that certifies, else exhausts the budget. Deterministic for
/// fixed (pair, config). Throws degenerate_input for non-loxodromic or
/// shared-fixed-point inputs.
SearchReport classicalize(const MarkedGroup& pair, const ClassicalizerConfig& config = {});

} // namespace schottky
