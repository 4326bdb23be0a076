#pragma once

#include <utility>
#include <variant>

#include "schottky/moebius.hpp"

namespace schottky {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& v);
Vec3 normalized(const Vec3& v);

/// Boundary transfer of the ball <-> upper-half-space isometry. The plane map
/// is stereographic projection from the north pole e = (0,0,1):
///   (x1,x2,x3) -> (x1 + i x2)/(1 - x3),   e -> INFINITY,
/// whose inverse is z -> (2 Re z, 2 Im z, |z|^2 - 1)/(|z|^2 + 1). The interior
/// extension sends the ball center to the basepoint j = (0,0,1).
ComplexPoint sphere_to_plane(const Vec3& p);
Vec3 plane_to_sphere(const ComplexPoint& z);

enum class BoundaryModel { plane, sphere };

/// A round circle on the boundary of either model. Plane circles carry a
/// finite euclidean center and radius. Sphere caps are stored by the unit
/// spherical center of the smaller cap and the chordal (euclidean R^3) radius
/// of the cap boundary.
struct BoundaryCircle {
    BoundaryModel model = BoundaryModel::plane;
    Complex planeCenter{0.0, 0.0};
    Vec3 sphereCenter{0.0, 0.0, 1.0};
    double radius = 1.0;

    static BoundaryCircle plane_circle(Complex center, double radius);
    static BoundaryCircle sphere_cap(const Vec3& center, double chordalRadius);
};

/// Image of a sphere circle that passes through the projection pole.
struct PlaneLine {
    Complex point{0.0, 0.0};
    Complex direction{1.0, 0.0}; // unit
};

using TransferredCircle = std::variant<BoundaryCircle, PlaneLine>;

/// Transfers a circle to the opposite model by reconstructing it from three
/// transferred sample points. A sphere circle through the pole (within 1e-9)
/// comes back as a PlaneLine.
TransferredCircle transfer_circle(const BoundaryCircle& circle);

/// Euclidean radius of the isometric spheres of a loxodromic map of the ball
/// whose axis passes through the origin: r = 1/sinh(T/2).
/// Throws nonpositive_length for T <= 0.
double ball_isometric_radius(double translationLength);

/// Cap boundaries of the isometric spheres of the vertical-axis loxodromic
/// with multiplier modulus |lambda| > 1, built from the euclidean radius r:
/// both spheres meet the unit sphere orthogonally at height +/- 1/sqrt(1+r^2).
/// First element is the map's own cap (stereographs to radius |lambda|),
/// second the inverse's (radius 1/|lambda|).
std::pair<BoundaryCircle, BoundaryCircle> vertical_axis_isometric_caps(double multiplierModulus);

/// Isometric-sphere summary for a diagonal (vertical-axis) loxodromic map.
struct IsometricSphereData {
    MoebiusMap mapRef;
    double ballRadius = 0.0;   // r = 2|lambda|/(|lambda|^2 - 1)
    double deltaMap = 0.0;     // projected plane radius |lambda|
    double deltaInverse = 0.0; // projected plane radius 1/|lambda|
};

IsometricSphereData vertical_axis_sphere_data(const ClassifiedMap& alphaDiagonal);

/// Annulus containment |lambda|^{-1} < |z_l| <= |z_u| < |lambda| together with
/// the signed scaled gaps (|z_u| - |lambda|)|tr| and (|z_l| - |lambda|^{-1})|tr|.
struct MarginReport {
    bool contained = false;
    double upperGap = 0.0;
    double lowerGap = 0.0;
};

MarginReport annulus_margins(Complex lambda, const ComplexPoint& zl, const ComplexPoint& zu,
                             Complex traceBeta);

} // namespace schottky
