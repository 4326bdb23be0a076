#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "schottky/hyperbolic.hpp"
#include "schottky/moebius.hpp"

namespace schottky {

enum class CircleOwner { alpha, alpha_inv, beta, beta_inv };

const char* to_string(CircleOwner owner) noexcept;
CircleOwner partner(CircleOwner owner) noexcept;

/// Isometric circle of a Moebius map with c != 0: the map's own circle has
/// center eta = -d/c, its inverse's has center zeta = a/c, both of radius 1/|c|.
struct IsometricCircle {
    CircleOwner owner = CircleOwner::beta;
    Complex center{0.0, 0.0};
    double radius = 0.0;
};

/// Circles of g and g^{-1}, tagged with `owner` and its partner.
/// Throws fixes_infinity when |c| <= 1e-12.
std::pair<IsometricCircle, IsometricCircle> isometric_circles(const MoebiusMap& g,
                                                              CircleOwner owner = CircleOwner::beta);

/// A generator-selection move on a marked group. Every move is mechanical:
/// replaying the history from the original pair reproduces the current pair.
struct Move {
    enum class Kind {
        swap_gens,        // (alpha, beta) -> (beta, alpha)
        invert_beta,      // beta -> beta^{-1}
        multiply_power,   // beta -> alpha^power beta  (alpha must be diagonal)
        conjugate_scale,  // conjugate both by z -> scale * z
        conjugate_generic,// conjugate both by `conj`
        rebase,           // replace the pair outright (words of the old pair)
    };

    Kind kind = Kind::swap_gens;
    long power = 0;
    Complex scale{1.0, 0.0};
    MoebiusMap conj;
    MoebiusMap rebaseAlpha, rebaseBeta;
    std::string annotation; // case label (A/A1/A2/B/B1/B2/C/...)
};

const char* to_string(Move::Kind kind) noexcept;

/// An ordered pair of loxodromic generators with its move history. `conjugacy`
/// accumulates the conjugation component of the history (scales and generic
/// conjugations); Nielsen moves are recorded in `history` only.
struct MarkedGroup {
    ClassifiedMap alpha, beta;
    MoebiusMap originalAlpha, originalBeta;
    MoebiusMap conjugacy;
    std::vector<Move> history;
};

/// Builds a marked group; throws not_loxodromic if either generator is not.
MarkedGroup make_marked_group(const MoebiusMap& alpha, const MoebiusMap& beta);

/// Applies one move, appending it to the history.
/// Throws inapplicable_move when preconditions fail (e.g. multiply_power on a
/// non-diagonal alpha).
MarkedGroup apply_move(const MarkedGroup& pair, const Move& move);

/// Replays the recorded history from the original pair.
MarkedGroup replay_history(const MarkedGroup& pair);

/// The fixed-point gap invariants of the pair:
///   zBeta = min{ |z_- - z_+|, |1/z_- - 1/z_+| }
///   zPair = min{ zBeta, |z_+|, |z_-|, |z_+|^{-1}, |z_-|^{-1} }.
struct ZGap {
    double zBeta = 0.0;
    double zPair = 0.0;
};

/// Requires alpha diagonal; throws degenerate_fixed_point if a fixed point of
/// beta is 0 or INFINITY.
ZGap z_gap(const MarkedGroup& pair);

/// Standard position: generators ordered by |tr|, alpha = diag(lambda, 1/lambda)
/// with |lambda| > 1 (attracting fixed point at INFINITY), beta inverted if
/// needed so |zeta| <= |eta|, then scaled so eta_beta = 1. All steps are
/// recorded as moves. Throws shared_fixed_point when the generators' fixed
/// points are within 1e-10 chordally.
MarkedGroup normalize_pair(const MarkedGroup& pair);

/// A sound witness that the marking is classical: four pairwise-disjoint
/// isometric circles in the frame `frame` (applied on top of the pair as
/// given), with the pairing law gamma(I_gamma) = I_{gamma^{-1}} verified by
/// sampling. Circle order: alpha, alpha_inv, beta, beta_inv.
struct ClassicalCertificate {
    std::array<IsometricCircle, 4> circles;
    double minMargin = 0.0;
    MoebiusMap frame;
};

enum class FrameStrategy {
    as_given,        // use the pair's current matrices directly
    generic_position // first conjugate all fixed points away from INFINITY
};

/// Certifies a classical marking or returns nullopt. nullopt means this
/// frame/marking failed, never that the group is nonclassical. A certificate
/// requires every pairwise separation margin > 1e-9 and the sampled mapping
/// law to hold within 1e-8.
std::optional<ClassicalCertificate> check_classical_marking(
    const MarkedGroup& pair, FrameStrategy strategy = FrameStrategy::generic_position);

/// Raw circle data and minimum pairwise margin in an explicit frame, with no
/// acceptance threshold applied (margin may be negative).
struct MarginComputation {
    std::array<IsometricCircle, 4> circles;
    double minMargin = 0.0;
};

MarginComputation marking_margins(const MarkedGroup& pair, const MoebiusMap& frame);

/// The generic-position conjugator used by check_classical_marking: a sphere
/// rotation sending a point chordally >= 0.1 away from every fixed point to
/// INFINITY. Identity when INFINITY itself is already clear of them.
MoebiusMap generic_position_frame(const MarkedGroup& pair);

} // namespace schottky
