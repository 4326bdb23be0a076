#include <cmath>

#include "doctest.h"
#include "schottky/markings.hpp"
#include "test_util.hpp"

using namespace schottky;
using testutil::random_standard_pair;
using testutil::reverify_certificate;

namespace {

const double kSqrt24 = std::sqrt(24.0);

MarkedGroup pair_from_fixed_points(Complex lambda, Complex p, Complex q, double traceBeta) {
    const Complex tr(traceBeta, 0.0);
    const Complex disc = std::sqrt(tr * tr - 4.0);
    Complex mu = (tr + disc) / 2.0;
    if (std::abs(mu) < 1.0) mu = (tr - disc) / 2.0;
    const MoebiusMap beta =
        MoebiusMap::with_fixed_points(ComplexPoint(p), ComplexPoint(q), mu * mu);
    return make_marked_group(MoebiusMap::diagonal(lambda), beta);
}

} // namespace

TEST_CASE("isometric circles: frozen centers and radii, unit derivative") {
    SUBCASE("[[3,2],[4,3]]") {
        const MoebiusMap g(Complex(3, 0), Complex(2, 0), Complex(4, 0), Complex(3, 0));
        auto [own, inv] = isometric_circles(g, CircleOwner::beta);
        CHECK(std::abs(own.center - Complex(-0.75, 0.0)) < 1e-12);
        CHECK(std::abs(inv.center - Complex(0.75, 0.0)) < 1e-12);
        CHECK(own.radius == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(own.owner == CircleOwner::beta);
        CHECK(inv.owner == CircleOwner::beta_inv);

        // |g'(z)| = 1 on the isometric circle.
        for (int s = 0; s < 16; ++s) {
            const double theta = s * 0.39269908169872414;
            const Complex z = own.center + own.radius * Complex(std::cos(theta), std::sin(theta));
            CHECK(g.derivative_modulus(z) == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    SUBCASE("[[5,sqrt(24)],[sqrt(24),5]]") {
        const MoebiusMap g(Complex(5, 0), Complex(kSqrt24, 0), Complex(kSqrt24, 0), Complex(5, 0));
        auto [own, inv] = isometric_circles(g, CircleOwner::alpha);
        CHECK(own.center.real() == doctest::Approx(-5.0 / kSqrt24).epsilon(1e-12));
        CHECK(inv.center.real() == doctest::Approx(5.0 / kSqrt24).epsilon(1e-12));
        CHECK(own.radius == doctest::Approx(1.0 / kSqrt24).epsilon(1e-12));
    }
    SUBCASE("diagonal maps have no finite circle") {
        CHECK_THROWS_AS(isometric_circles(MoebiusMap::diagonal(Complex(2.0, 0.0))), Error);
    }
}

TEST_CASE("z-gap: frozen minima, inversion invariance, degeneracy") {
    SUBCASE("symmetric fixed points {1,-1}") {
        const MarkedGroup pair = pair_from_fixed_points(Complex(3, 0), Complex(1, 0), Complex(-1, 0), 7.0);
        const ZGap gap = z_gap(pair);
        CHECK(gap.zBeta == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(gap.zPair == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("fixed points {2,-1}") {
        const MarkedGroup pair = pair_from_fixed_points(Complex(3, 0), Complex(2, 0), Complex(-1, 0), 7.0);
        const ZGap gap = z_gap(pair);
        CHECK(gap.zBeta == doctest::Approx(1.5).epsilon(1e-12));
        CHECK(gap.zPair == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("fixed points {0.1, 10}") {
        const MarkedGroup pair = pair_from_fixed_points(Complex(3, 0), Complex(0.1, 0), Complex(10, 0), 7.0);
        const ZGap gap = z_gap(pair);
        CHECK(gap.zBeta == doctest::Approx(9.9).epsilon(1e-12));
        CHECK(gap.zPair == doctest::Approx(0.1).epsilon(1e-12));
    }
    SUBCASE("invariant under beta -> beta^{-1}") {
        Rng rng(813);
        for (int i = 0; i < 50; ++i) {
            const MarkedGroup pair = random_standard_pair(rng);
            Move inv;
            inv.kind = Move::Kind::invert_beta;
            const MarkedGroup flipped = apply_move(pair, inv);
            CHECK(z_gap(pair).zBeta == doctest::Approx(z_gap(flipped).zBeta).epsilon(1e-10));
            CHECK(z_gap(pair).zPair == doctest::Approx(z_gap(flipped).zPair).epsilon(1e-10));
        }
    }
    SUBCASE("fixed point at zero is degenerate") {
        const MarkedGroup pair = pair_from_fixed_points(Complex(3, 0), Complex(0, 0), Complex(2, 0), 7.0);
        CHECK_THROWS_AS(z_gap(pair), Error);
    }
    SUBCASE("requires diagonal alpha") {
        const MoebiusMap a(Complex(3, 0), Complex(2, 0), Complex(4, 0), Complex(3, 0));
        const MoebiusMap b(Complex(5, 0), Complex(kSqrt24, 0), Complex(kSqrt24, 0), Complex(5, 0));
        CHECK_THROWS_AS(z_gap(make_marked_group(a, b)), Error);
    }
}

TEST_CASE("normalize_pair reaches the standard position") {
    SUBCASE("already-normalized pairs come back unchanged") {
        Rng rng(271);
        const MarkedGroup pair = normalize_pair(random_standard_pair(rng));
        const MarkedGroup again = normalize_pair(pair);
        CHECK(again.history.size() == pair.history.size());
        CHECK(approx_equal(again.alpha.map(), pair.alpha.map(), 1e-12));
        CHECK(approx_equal(again.beta.map(), pair.beta.map(), 1e-12));
    }
    SUBCASE("alpha with fixed points {1,-1} is diagonalized") {
        const MoebiusMap alpha =
            MoebiusMap::with_fixed_points(ComplexPoint(1.0, 0.0), ComplexPoint(-1.0, 0.0),
                                          Complex(4.0, 0.0));
        const MoebiusMap beta =
            MoebiusMap::with_fixed_points(ComplexPoint(0.3, 0.2), ComplexPoint(-2.0, 1.0),
                                          Complex(9.0, 0.0));
        const MarkedGroup normalized = normalize_pair(make_marked_group(alpha, beta));
        CHECK(std::abs(normalized.alpha.map().b()) < 1e-10);
        CHECK(std::abs(normalized.alpha.map().c()) < 1e-10);
        CHECK(std::abs(normalized.alpha.map().a()) > 1.0);
    }
    SUBCASE("trace order is enforced by swapping") {
        // alpha trace ~3.5, beta trace 3 -> swap expected.
        const MarkedGroup pair =
            pair_from_fixed_points(Complex(3.2, 0), Complex(1, 0), Complex(-1, 0), 3.0);
        const MarkedGroup normalized = normalize_pair(pair);
        bool swapped = false;
        for (const Move& move : normalized.history)
            if (move.kind == Move::Kind::swap_gens) swapped = true;
        CHECK(swapped);
        CHECK(std::abs(normalized.alpha.map().trace()) <=
              std::abs(normalized.beta.map().trace()) + 1e-12);
    }
    SUBCASE("postconditions hold on sampled pairs") {
        Rng rng(5179);
        for (int i = 0; i < 100; ++i) {
            // Scramble a standard pair by a random conjugation first.
            MarkedGroup pair = random_standard_pair(rng);
            Move conj;
            conj.kind = Move::Kind::conjugate_generic;
            conj.conj = testutil::random_map(rng);
            pair = apply_move(pair, conj);

            const MarkedGroup normalized = normalize_pair(pair);
            const MoebiusMap& a = normalized.alpha.map();
            const MoebiusMap& b = normalized.beta.map();
            CHECK(a.is_diagonal(1e-10));
            CHECK(std::abs(a.a()) > 1.0);
            const Complex eta = -b.d() / b.c();
            const Complex zeta = b.a() / b.c();
            CHECK(std::abs(eta - Complex(1.0, 0.0)) < 1e-9);
            CHECK(std::abs(zeta) <= 1.0 + 1e-9);
        }
    }
    SUBCASE("diagonal but contracting alpha is flipped to |lambda| > 1") {
        const MoebiusMap alpha = MoebiusMap::diagonal(Complex(0.5, 0.0));
        const MoebiusMap beta = MoebiusMap::with_fixed_points(
            ComplexPoint(1.0, 0.0), ComplexPoint(-2.0, 0.5), Complex(9.0, 0.0));
        const MarkedGroup normalized = normalize_pair(make_marked_group(alpha, beta));
        CHECK(normalized.alpha.map().is_diagonal());
        CHECK(std::abs(normalized.alpha.map().a()) == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("shared fixed points are rejected") {
        const MoebiusMap alpha = MoebiusMap::diagonal(Complex(2.0, 0.0)); // fixes 0, inf
        const MoebiusMap beta =
            MoebiusMap::with_fixed_points(ComplexPoint(0.0, 0.0), ComplexPoint(1.0, 0.0),
                                          Complex(4.0, 0.0)); // also fixes 0
        CHECK_THROWS_AS(normalize_pair(make_marked_group(alpha, beta)), Error);
    }
}

TEST_CASE("conjugacy accumulates the conjugation component of the history") {
    Rng rng(616);
    for (int i = 0; i < 25; ++i) {
        MarkedGroup pair = random_standard_pair(rng);
        Move scale;
        scale.kind = Move::Kind::conjugate_scale;
        scale.scale = Complex(rng.uniform(0.5, 2.0), rng.uniform(-0.3, 0.3));
        pair = apply_move(pair, scale);
        Move conj;
        conj.kind = Move::Kind::conjugate_generic;
        conj.conj = testutil::random_map(rng);
        pair = apply_move(pair, conj);

        // For a conjugation-only history, conjugacy reproduces the current
        // generators from the originals.
        CHECK(testutil::maps_close(conjugate(pair.conjugacy, pair.originalAlpha),
                                   pair.alpha.map(), 1e-9));
        CHECK(testutil::maps_close(conjugate(pair.conjugacy, pair.originalBeta),
                                   pair.beta.map(), 1e-9));
    }
}

TEST_CASE("history replay reproduces the current pair") {
    Rng rng(33);
    for (int i = 0; i < 25; ++i) {
        MarkedGroup pair = normalize_pair(random_standard_pair(rng));
        Move power;
        power.kind = Move::Kind::multiply_power;
        power.power = 1 + static_cast<long>(rng.next() % 3);
        try {
            pair = apply_move(pair, power);
        } catch (const Error&) {
            continue; // power move left the loxodromic locus; skip
        }
        Move scale;
        scale.kind = Move::Kind::conjugate_scale;
        scale.scale = Complex(rng.uniform(0.5, 2.0), rng.uniform(-0.5, 0.5));
        pair = apply_move(pair, scale);

        const MarkedGroup replayed = replay_history(pair);
        CHECK(approx_equal(replayed.alpha.map(), pair.alpha.map(), 1e-8));
        CHECK(approx_equal(replayed.beta.map(), pair.beta.map(), 1e-8));
    }
}

TEST_CASE("rebase moves replace the marking and replay faithfully") {
    Rng rng(4242);
    const MarkedGroup pair = normalize_pair(random_standard_pair(rng));
    // New first generator alpha * beta (diagonalized by hand is not required
    // for the move itself), old alpha demoted to the second slot.
    Move rebase;
    rebase.kind = Move::Kind::rebase;
    rebase.rebaseAlpha = compose(pair.alpha.map(), pair.beta.map());
    rebase.rebaseBeta = pair.alpha.map();
    rebase.annotation = "B2";
    const MarkedGroup rebased = apply_move(pair, rebase);
    CHECK(approx_equal(rebased.alpha.map(), rebase.rebaseAlpha, 1e-12));
    CHECK(approx_equal(rebased.beta.map(), rebase.rebaseBeta, 1e-12));
    // The conjugacy component is reset: the rebase pair is a fresh marking.
    CHECK(approx_equal(rebased.conjugacy, MoebiusMap::identity(), 1e-14));

    const MarkedGroup replayed = replay_history(rebased);
    CHECK(testutil::maps_close(replayed.alpha.map(), rebased.alpha.map(), 1e-8));
    CHECK(testutil::maps_close(replayed.beta.map(), rebased.beta.map(), 1e-8));
}

TEST_CASE("classical marking certificates") {
    SUBCASE("diag(4,1/4) with the symmetric trace-10 beta certifies") {
        const MoebiusMap alpha = MoebiusMap::diagonal(Complex(4.0, 0.0));
        const MoebiusMap beta(Complex(5, 0), Complex(kSqrt24, 0), Complex(kSqrt24, 0), Complex(5, 0));
        const MarkedGroup pair = make_marked_group(alpha, beta);
        const auto cert = check_classical_marking(pair);
        REQUIRE(cert.has_value());
        CHECK(cert->minMargin > 0.0);
        CHECK(reverify_certificate(pair, *cert));
        // The certificate frame is a sphere rotation, so the beta circles keep
        // radius ~1/sqrt(24) near their +-1.02 centers while the alpha circles
        // land well clear of them.
        CHECK(cert->circles[2].radius == doctest::Approx(1.0 / kSqrt24).epsilon(0.05));
        CHECK(std::abs(cert->circles[2].center) == doctest::Approx(5.0 / kSqrt24).epsilon(0.05));
        CHECK(std::abs(cert->circles[0].center - cert->circles[2].center) >
              cert->circles[0].radius + cert->circles[2].radius);
    }
    SUBCASE("multiplier 1.01 with overlapping circles yields none") {
        const MarkedGroup pair =
            pair_from_fixed_points(Complex(1.01, 0), Complex(1, 0), Complex(-1, 0), 10.0);
        CHECK_FALSE(check_classical_marking(pair).has_value());
    }
    SUBCASE("overlapping beta circles yield none") {
        const MarkedGroup pair =
            pair_from_fixed_points(Complex(4.0, 0), Complex(1, 0), Complex(-1, 0), 2.2);
        CHECK_FALSE(check_classical_marking(pair).has_value());
    }
    SUBCASE("certificates re-verify independently on sampled pairs") {
        Rng rng(90210);
        int certified = 0;
        for (int i = 0; i < 60; ++i) {
            const MarkedGroup pair = random_standard_pair(rng, 50.0, 500.0);
            const auto cert = check_classical_marking(pair);
            if (!cert) continue;
            ++certified;
            CHECK(reverify_certificate(pair, *cert));
        }
        CHECK(certified > 10); // the big-trace corpus certifies often
    }
    SUBCASE("re-running in the certificate frame reproduces the margin") {
        const MoebiusMap alpha = MoebiusMap::diagonal(Complex(4.0, 0.0));
        const MoebiusMap beta(Complex(5, 0), Complex(kSqrt24, 0), Complex(kSqrt24, 0), Complex(5, 0));
        const MarkedGroup pair = make_marked_group(alpha, beta);
        const auto cert = check_classical_marking(pair);
        REQUIRE(cert.has_value());

        Move conj;
        conj.kind = Move::Kind::conjugate_generic;
        conj.conj = cert->frame;
        const MarkedGroup framed = apply_move(pair, conj);
        const auto again = check_classical_marking(framed, FrameStrategy::as_given);
        REQUIRE(again.has_value());
        CHECK(again->minMargin == doctest::Approx(cert->minMargin).epsilon(1e-9));
    }
}

TEST_CASE("isometric radii are exactly 1/|c| and shrink like 1/|tr|") {
    SUBCASE("radius identity along alpha^k beta") {
        Rng rng(1204);
        const MarkedGroup pair = normalize_pair(random_standard_pair(rng));
        for (long k = -5; k <= 5; ++k) {
            const MoebiusMap w = compose(moebius_power(pair.alpha.map(), k), pair.beta.map());
            if (std::abs(w.c()) <= 1e-12) continue;
            auto [own, inv] = isometric_circles(w);
            CHECK(own.radius == doctest::Approx(1.0 / std::abs(w.c())).epsilon(1e-12));
            CHECK(inv.radius == own.radius);
        }
    }
    SUBCASE("growing trace shrinks the circles at pinned fixed points") {
        double previousRadius = 1e9;
        for (double trace : {10.0, 20.0, 40.0, 80.0, 160.0}) {
            const MarkedGroup pair =
                pair_from_fixed_points(Complex(3, 0), Complex(1.3, 0.4), Complex(-0.9, -0.2), trace);
            auto [own, inv] = isometric_circles(pair.beta.map());
            CHECK(own.radius < previousRadius);
            // radius * |tr| stays pinned near the fixed-point separation.
            const double product = own.radius * trace;
            CHECK(product > 0.5);
            CHECK(product < 5.0);
            previousRadius = own.radius;
        }
    }
}
