#include "schottky/markings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace schottky {

namespace {

constexpr double kFixesInfinityTol = 1e-12;
constexpr double kSharedFixedPointTol = 1e-10;
constexpr double kCertificateMarginFloor = 1e-9;
constexpr double kMappingLawTol = 1e-8;

std::array<ComplexPoint, 4> all_fixed_points(const MarkedGroup& pair) {
    auto [a1, a2] = fixed_points(pair.alpha);
    auto [b1, b2] = fixed_points(pair.beta);
    return {a1, a2, b1, b2};
}

// Candidate poles for the generic-position frame, spread over the sphere.
const std::array<ComplexPoint, 18>& frame_candidates() {
    static const std::array<ComplexPoint, 18> candidates = {
        ComplexPoint::infinity(),
        ComplexPoint(0.0, 0.0),
        ComplexPoint(1.0, 0.0),
        ComplexPoint(-1.0, 0.0),
        ComplexPoint(0.0, 1.0),
        ComplexPoint(0.0, -1.0),
        ComplexPoint(1.0, 1.0),
        ComplexPoint(1.0, -1.0),
        ComplexPoint(-1.0, 1.0),
        ComplexPoint(-1.0, -1.0),
        ComplexPoint(2.0, 0.0),
        ComplexPoint(-2.0, 0.0),
        ComplexPoint(0.0, 2.0),
        ComplexPoint(0.0, -2.0),
        ComplexPoint(0.5, 0.0),
        ComplexPoint(-0.5, 0.0),
        ComplexPoint(0.0, 0.5),
        ComplexPoint(0.0, -0.5),
    };
    return candidates;
}

bool mapping_law_holds(const MoebiusMap& g, const IsometricCircle& own,
                       const IsometricCircle& image, int samples) {
    for (int i = 0; i < samples; ++i) {
        const double theta = 2.0 * 3.141592653589793238462643 * i / samples;
        const Complex z = own.center + own.radius * Complex(std::cos(theta), std::sin(theta));
        const ComplexPoint w = g.apply(ComplexPoint(z));
        if (w.is_infinity()) return false;
        const double offset = std::abs(std::abs(w.value() - image.center) - image.radius);
        if (offset > kMappingLawTol * (1.0 + image.radius)) return false;
    }
    return true;
}

} // namespace

const char* to_string(CircleOwner owner) noexcept {
    switch (owner) {
        case CircleOwner::alpha: return "alpha";
        case CircleOwner::alpha_inv: return "alpha_inv";
        case CircleOwner::beta: return "beta";
        case CircleOwner::beta_inv: return "beta_inv";
    }
    return "?";
}

CircleOwner partner(CircleOwner owner) noexcept {
    switch (owner) {
        case CircleOwner::alpha: return CircleOwner::alpha_inv;
        case CircleOwner::alpha_inv: return CircleOwner::alpha;
        case CircleOwner::beta: return CircleOwner::beta_inv;
        case CircleOwner::beta_inv: return CircleOwner::beta;
    }
    return owner;
}

std::pair<IsometricCircle, IsometricCircle> isometric_circles(const MoebiusMap& g,
                                                              CircleOwner owner) {
    if (std::abs(g.c()) <= kFixesInfinityTol)
        fail(errc::fixes_infinity, "map has no finite isometric circle (c ~ 0)");
    const double radius = 1.0 / std::abs(g.c());
    IsometricCircle own{owner, -g.d() / g.c(), radius};
    IsometricCircle inv{partner(owner), g.a() / g.c(), radius};
    return {own, inv};
}

const char* to_string(Move::Kind kind) noexcept {
    switch (kind) {
        case Move::Kind::swap_gens: return "swap";
        case Move::Kind::invert_beta: return "invert";
        case Move::Kind::multiply_power: return "power";
        case Move::Kind::conjugate_scale: return "scale";
        case Move::Kind::conjugate_generic: return "conjugate";
        case Move::Kind::rebase: return "rebase";
    }
    return "?";
}

MarkedGroup make_marked_group(const MoebiusMap& alpha, const MoebiusMap& beta) {
    ClassifiedMap ca(alpha), cb(beta);
    if (!ca.loxodromic())
        fail(errc::not_loxodromic, std::string("alpha is ") + to_string(ca.kind()));
    if (!cb.loxodromic())
        fail(errc::not_loxodromic, std::string("beta is ") + to_string(cb.kind()));
    return MarkedGroup{std::move(ca), std::move(cb), alpha, beta, MoebiusMap::identity(), {}};
}

MarkedGroup apply_move(const MarkedGroup& pair, const Move& move) {
    MoebiusMap newAlpha = pair.alpha.map();
    MoebiusMap newBeta = pair.beta.map();
    MoebiusMap newConjugacy = pair.conjugacy;
    switch (move.kind) {
        case Move::Kind::swap_gens:
            std::swap(newAlpha, newBeta);
            break;
        case Move::Kind::invert_beta:
            newBeta = newBeta.inverse();
            break;
        case Move::Kind::multiply_power: {
            if (!newAlpha.is_diagonal())
                fail(errc::inapplicable_move, "multiply_power requires diagonal alpha");
            const MoebiusMap alphaPow =
                MoebiusMap::diagonal(std::pow(newAlpha.a(), static_cast<double>(move.power)));
            newBeta = compose(alphaPow, newBeta);
            break;
        }
        case Move::Kind::conjugate_scale: {
            if (std::abs(move.scale) == 0.0)
                fail(errc::inapplicable_move, "conjugate_scale needs nonzero factor");
            const MoebiusMap s = MoebiusMap::scaling(move.scale);
            newAlpha = conjugate(s, newAlpha);
            newBeta = conjugate(s, newBeta);
            newConjugacy = compose(s, newConjugacy);
            break;
        }
        case Move::Kind::conjugate_generic: {
            newAlpha = conjugate(move.conj, newAlpha);
            newBeta = conjugate(move.conj, newBeta);
            newConjugacy = compose(move.conj, newConjugacy);
            break;
        }
        case Move::Kind::rebase:
            newAlpha = move.rebaseAlpha;
            newBeta = move.rebaseBeta;
            newConjugacy = MoebiusMap::identity();
            break;
    }
    ClassifiedMap ca(newAlpha), cb(newBeta);
    if (!ca.loxodromic() || !cb.loxodromic())
        fail(errc::not_loxodromic, "move produced a non-loxodromic generator");
    MarkedGroup out{std::move(ca), std::move(cb), pair.originalAlpha, pair.originalBeta,
                    newConjugacy, pair.history};
    out.history.push_back(move);
    return out;
}

MarkedGroup replay_history(const MarkedGroup& pair) {
    MarkedGroup out = make_marked_group(pair.originalAlpha, pair.originalBeta);
    for (const Move& move : pair.history) out = apply_move(out, move);
    return out;
}

ZGap z_gap(const MarkedGroup& pair) {
    if (!pair.alpha.map().is_diagonal())
        fail(errc::not_normalized, "z_gap requires diagonal alpha");
    auto [zm, zp] = fixed_points(pair.beta);
    if (zm.is_infinity() || zp.is_infinity() || zm.modulus() == 0.0 || zp.modulus() == 0.0)
        fail(errc::degenerate_fixed_point, "beta fixed point at 0 or infinity");
    const Complex a = zm.value();
    const Complex b = zp.value();
    ZGap gap;
    gap.zBeta = std::min(std::abs(a - b), std::abs(1.0 / a - 1.0 / b));
    gap.zPair = std::min({gap.zBeta, std::abs(a), std::abs(b), 1.0 / std::abs(a), 1.0 / std::abs(b)});
    return gap;
}

MarkedGroup normalize_pair(const MarkedGroup& pair) {
    // Reject shared fixed points up front (not a rank-2 Schottky configuration).
    {
        auto [a1, a2] = fixed_points(pair.alpha);
        auto [b1, b2] = fixed_points(pair.beta);
        for (const ComplexPoint& pa : {a1, a2})
            for (const ComplexPoint& pb : {b1, b2})
                if (chordal_distance(pa, pb) < kSharedFixedPointTol)
                    fail(errc::shared_fixed_point, "generators share a fixed point");
    }

    MarkedGroup out = pair;

    if (std::abs(out.alpha.map().trace()) > std::abs(out.beta.map().trace())) {
        Move m;
        m.kind = Move::Kind::swap_gens;
        m.annotation = "order";
        out = apply_move(out, m);
    }

    const MoebiusMap& a0 = out.alpha.map();
    const bool exactDiagonalExpanding =
        std::abs(a0.b()) == 0.0 && std::abs(a0.c()) == 0.0 && std::abs(a0.a()) > 1.0;
    if (!exactDiagonalExpanding) {
        auto [zm, zp] = fixed_points(out.alpha);
        // Attracting fixed point (derivative modulus < 1) goes to INFINITY so
        // the diagonal entry lambda has |lambda| > 1.
        ComplexPoint repelling = zm, attracting = zp;
        const MoebiusMap& am = out.alpha.map();
        // At infinity (c = 0 case) the derivative in the 1/z chart is 1/a^2 = d^2.
        const double dp = zp.is_infinity() ? std::norm(am.d()) : am.derivative_modulus(zp.value());
        if (dp >= 1.0) std::swap(repelling, attracting);

        MoebiusMap toStd;
        if (repelling.is_infinity())
            toStd = MoebiusMap(0.0, 1.0, 1.0, -attracting.value());
        else if (attracting.is_infinity())
            toStd = MoebiusMap::translation(-repelling.value());
        else
            toStd = MoebiusMap(1.0, -repelling.value(), 1.0, -attracting.value());

        Move m;
        m.kind = Move::Kind::conjugate_generic;
        m.conj = toStd;
        m.annotation = "diagonalize";
        out = apply_move(out, m);

        // The conjugation leaves O(eps) off-diagonal residue; snap it away so
        // the diagonal frame is exact for power moves and word traces.
        const MoebiusMap& ad = out.alpha.map();
        if (std::abs(ad.b()) <= 1e-12 * (1.0 + std::abs(ad.a())) &&
            std::abs(ad.c()) <= 1e-12 * (1.0 + std::abs(ad.a())) &&
            (std::abs(ad.b()) != 0.0 || std::abs(ad.c()) != 0.0)) {
            out.alpha = ClassifiedMap(MoebiusMap::diagonal(ad.a()));
        }
    }

    if (std::abs(out.beta.map().c()) <= kFixesInfinityTol)
        fail(errc::shared_fixed_point, "beta fixes infinity in the diagonal frame");

    {
        const Complex eta = -out.beta.map().d() / out.beta.map().c();
        const Complex zeta = out.beta.map().a() / out.beta.map().c();
        if (std::abs(eta) <= 1e-12 || std::abs(zeta) > std::abs(eta)) {
            Move m;
            m.kind = Move::Kind::invert_beta;
            m.annotation = "order";
            out = apply_move(out, m);
        }
    }

    {
        const Complex eta = -out.beta.map().d() / out.beta.map().c();
        if (std::abs(eta) <= 1e-12)
            fail(errc::degenerate_input, "both isometric-circle centers of beta vanish");
        if (std::abs(eta - 1.0) > 1e-12) {
            Move m;
            m.kind = Move::Kind::conjugate_scale;
            m.scale = 1.0 / eta;
            m.annotation = "eta-1";
            out = apply_move(out, m);
        }
    }

    return out;
}

namespace {

MoebiusMap pole_rotation(const ComplexPoint& pole) {
    if (pole.is_infinity()) return MoebiusMap::identity();
    const Complex w = pole.value();
    // Sphere rotation sending w to INFINITY (and its antipode to 0).
    return MoebiusMap(std::conj(w), 1.0, 1.0, -w);
}

} // namespace

MoebiusMap generic_position_frame(const MarkedGroup& pair) {
    const auto fps = all_fixed_points(pair);
    // Admissible poles keep every fixed point chordally >= 0.1 away (so the
    // conjugated maps have well-conditioned circles); among those, pick the
    // frame exhibiting the largest separation margin.
    double bestMargin = -std::numeric_limits<double>::infinity();
    std::optional<MoebiusMap> best;
    for (const ComplexPoint& candidate : frame_candidates()) {
        double minDist = std::numeric_limits<double>::infinity();
        for (const ComplexPoint& fp : fps)
            minDist = std::min(minDist, chordal_distance(candidate, fp));
        if (minDist < 0.1) continue;
        const MoebiusMap frame = pole_rotation(candidate);
        try {
            const double margin = marking_margins(pair, frame).minMargin;
            if (margin > bestMargin) {
                bestMargin = margin;
                best = frame;
            }
        } catch (const Error&) {
            continue;
        }
    }
    if (!best)
        fail(errc::degenerate_input, "no generic-position pole clears the fixed points");
    return *best;
}

MarginComputation marking_margins(const MarkedGroup& pair, const MoebiusMap& frame) {
    const MoebiusMap a = conjugate(frame, pair.alpha.map());
    const MoebiusMap b = conjugate(frame, pair.beta.map());
    auto [ia, iaInv] = isometric_circles(a, CircleOwner::alpha);
    auto [ib, ibInv] = isometric_circles(b, CircleOwner::beta);

    MarginComputation out{{ia, iaInv, ib, ibInv}, std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < out.circles.size(); ++i) {
        for (std::size_t j = i + 1; j < out.circles.size(); ++j) {
            const double sep = std::abs(out.circles[i].center - out.circles[j].center) -
                               (out.circles[i].radius + out.circles[j].radius);
            out.minMargin = std::min(out.minMargin, sep);
        }
    }
    return out;
}

std::optional<ClassicalCertificate> check_classical_marking(const MarkedGroup& pair,
                                                            FrameStrategy strategy) {
    const MoebiusMap frame = strategy == FrameStrategy::generic_position
                                 ? generic_position_frame(pair)
                                 : MoebiusMap::identity();
    const MarginComputation margins = marking_margins(pair, frame);
    if (!(margins.minMargin > kCertificateMarginFloor)) return std::nullopt;

    const MoebiusMap a = conjugate(frame, pair.alpha.map());
    const MoebiusMap b = conjugate(frame, pair.beta.map());
    if (!mapping_law_holds(a, margins.circles[0], margins.circles[1], 16)) return std::nullopt;
    if (!mapping_law_holds(b, margins.circles[2], margins.circles[3], 16)) return std::nullopt;

    ClassicalCertificate cert;
    cert.circles = margins.circles;
    cert.minMargin = margins.minMargin;
    cert.frame = frame;
    return cert;
}

} // namespace schottky
