#include <cmath>

#include "doctest.h"
#include "schottky/hyperbolic.hpp"
#include "test_util.hpp"

using namespace schottky;

namespace {

Vec3 random_sphere_point(Rng& rng) {
    for (;;) {
        const Vec3 v{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        const double n = norm(v);
        if (n > 0.1) return Vec3{v.x / n, v.y / n, v.z / n};
    }
}

} // namespace

TEST_CASE("stereographic transfer: pole, antipode, equator") {
    CHECK(sphere_to_plane(Vec3{0.0, 0.0, 1.0}).is_infinity());
    CHECK(sphere_to_plane(Vec3{0.0, 0.0, -1.0}).modulus() == 0.0);
    CHECK(std::abs(sphere_to_plane(Vec3{1.0, 0.0, 0.0}).value() - Complex(1.0, 0.0)) < 1e-15);

    const Vec3 north = plane_to_sphere(ComplexPoint::infinity());
    CHECK(north.z == 1.0);
}

TEST_CASE("transfer round-trips to identity on random boundary points") {
    Rng rng(99);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 p = random_sphere_point(rng);
        const Vec3 q = plane_to_sphere(sphere_to_plane(p));
        CHECK(std::sqrt((p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y) +
                        (p.z - q.z) * (p.z - q.z)) < 1e-12);

        const ComplexPoint z(rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0));
        const ComplexPoint w = sphere_to_plane(plane_to_sphere(z));
        CHECK(std::abs(z.value() - w.value()) < 1e-12 * (1.0 + std::abs(z.value())));
    }
}

TEST_CASE("equator transfers to the unit circle") {
    const BoundaryCircle equator = BoundaryCircle::sphere_cap(Vec3{0.0, 0.0, 1.0}, std::sqrt(2.0));
    const auto image = transfer_circle(equator);
    const auto* circle = std::get_if<BoundaryCircle>(&image);
    REQUIRE(circle != nullptr);
    CHECK(circle->radius == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(circle->planeCenter) < 1e-12);
}

TEST_CASE("circles through the pole come back as lines") {
    // Vertical great circle through both poles.
    const BoundaryCircle meridian = BoundaryCircle::sphere_cap(Vec3{1.0, 0.0, 0.0}, std::sqrt(2.0));
    const auto image = transfer_circle(meridian);
    CHECK(std::holds_alternative<PlaneLine>(image));
}

TEST_CASE("plane circles lift to caps and back") {
    Rng rng(123);
    for (int i = 0; i < 100; ++i) {
        const Complex center(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
        const double radius = rng.log_uniform(0.05, 5.0);
        const BoundaryCircle circle = BoundaryCircle::plane_circle(center, radius);
        const auto lifted = transfer_circle(circle);
        const auto* cap = std::get_if<BoundaryCircle>(&lifted);
        REQUIRE(cap != nullptr);
        CHECK(cap->model == BoundaryModel::sphere);
        CHECK(std::abs(norm(cap->sphereCenter) - 1.0) < 1e-12);

        const auto back = transfer_circle(*cap);
        const auto* plane = std::get_if<BoundaryCircle>(&back);
        REQUIRE(plane != nullptr);
        CHECK(std::abs(plane->planeCenter - center) < 1e-9 * (1.0 + std::abs(center)));
        CHECK(plane->radius == doctest::Approx(radius).epsilon(1e-9));

        // Sampled points on the source circle land on the transferred cap.
        for (int s = 0; s < 8; ++s) {
            const double theta = s * 0.7853981633974483;
            const Complex z = center + radius * Complex(std::cos(theta), std::sin(theta));
            const Vec3 p = plane_to_sphere(ComplexPoint(z));
            const double offset = std::abs(std::sqrt(2.0 - 2.0 * dot(p, cap->sphereCenter)) -
                                           cap->radius);
            CHECK(offset < 1e-9);
        }
    }
}

TEST_CASE("ball isometric radius: frozen values, limits and errors") {
    CHECK(ball_isometric_radius(2.0 * std::log(2.0)) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(ball_isometric_radius(2.0 * std::log(3.0)) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(ball_isometric_radius(20.0) < 1e-4);
    CHECK(ball_isometric_radius(10.0) > ball_isometric_radius(20.0));
    CHECK_THROWS_AS(ball_isometric_radius(0.0), Error);
    CHECK_THROWS_AS(ball_isometric_radius(-1.0), Error);
}

TEST_CASE("vertical-axis caps stereograph to radii |lambda| and 1/|lambda|") {
    SUBCASE("|lambda| = 2 gives C_2 and C_{1/2}") {
        auto [capMap, capInv] = vertical_axis_isometric_caps(2.0);
        const auto imageMap = transfer_circle(capMap);
        const auto imageInv = transfer_circle(capInv);
        const auto* c1 = std::get_if<BoundaryCircle>(&imageMap);
        const auto* c2 = std::get_if<BoundaryCircle>(&imageInv);
        REQUIRE(c1 != nullptr);
        REQUIRE(c2 != nullptr);
        CHECK(c1->radius == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(c2->radius == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(std::abs(c1->planeCenter) < 1e-9);
        CHECK(std::abs(c2->planeCenter) < 1e-9);
    }
    SUBCASE("random multipliers reproduce the projected radii to 1e-8") {
        Rng rng(2717);
        for (int i = 0; i < 100; ++i) {
            const double lam = 1.0 + 49.0 * rng.uniform(1e-3, 1.0);
            const double T = 2.0 * std::log(lam);
            const double r = ball_isometric_radius(T);
            CHECK(std::abs(r - 2.0 * lam / (lam * lam - 1.0)) <= 1e-12 * std::max(1.0, r));

            auto [capMap, capInv] = vertical_axis_isometric_caps(lam);
            const auto imageMap = transfer_circle(capMap);
            const auto imageInv = transfer_circle(capInv);
            const auto* up = std::get_if<BoundaryCircle>(&imageMap);
            const auto* down = std::get_if<BoundaryCircle>(&imageInv);
            REQUIRE(up != nullptr);
            REQUIRE(down != nullptr);
            CHECK(std::abs(up->radius - lam) <= 1e-8 * lam);
            CHECK(std::abs(down->radius - 1.0 / lam) <= 1e-8 / lam);
        }
    }
}

TEST_CASE("vertical-axis sphere data carries reciprocal projected radii") {
    const ClassifiedMap alpha(MoebiusMap::diagonal(Complex(2.0, 0.0)));
    const IsometricSphereData data = vertical_axis_sphere_data(alpha);
    CHECK(data.ballRadius == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
    CHECK(data.deltaMap == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(data.deltaMap * data.deltaInverse == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("annulus margins report containment and scaled gaps") {
    SUBCASE("lambda=4, z=+-1, |tr|=10") {
        const MarginReport r = annulus_margins(Complex(4.0, 0.0), ComplexPoint(-1.0, 0.0),
                                               ComplexPoint(1.0, 0.0), Complex(10.0, 0.0));
        CHECK(r.contained);
        CHECK(r.upperGap == doctest::Approx(-30.0).epsilon(1e-12));
        CHECK(r.lowerGap == doctest::Approx(7.5).epsilon(1e-12));
    }
    SUBCASE("thin annulus leaves only negligible gaps") {
        const MarginReport r = annulus_margins(Complex(1.01, 0.0), ComplexPoint(-1.0, 0.0),
                                               ComplexPoint(1.0, 0.0), Complex(10.0, 0.0));
        // +-1 sits strictly inside (1/1.01, 1.01), but both scaled gaps are
        // tiny, which is what rules this configuration out downstream.
        CHECK(r.contained);
        CHECK(std::abs(r.upperGap) < 0.2);
        CHECK(std::abs(r.lowerGap) < 0.2);
        const MarginReport wide = annulus_margins(Complex(1.0001, 0.0), ComplexPoint(-2.0, 0.0),
                                                  ComplexPoint(2.0, 0.0), Complex(10.0, 0.0));
        CHECK_FALSE(wide.contained);
    }
    SUBCASE("large trace scales the gap") {
        const MarginReport r = annulus_margins(Complex(2.0, 0.0), ComplexPoint(0.6, 0.0),
                                               ComplexPoint(1.9, 0.0), Complex(1000.0, 0.0));
        CHECK(r.contained);
        CHECK(r.lowerGap == doctest::Approx(100.0).epsilon(1e-10));
        CHECK(r.upperGap < 0.0);
    }
}
