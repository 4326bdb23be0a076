#include "schottky/hyperbolic.hpp"

#include <array>
#include <cmath>

namespace schottky {

namespace {

constexpr double kPoleTol = 1e-9;

// Orthonormal frame {u, v} spanning the plane orthogonal to n.
std::pair<Vec3, Vec3> tangent_frame(const Vec3& n) {
    const Vec3 seed = std::abs(n.x) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
    const Vec3 u = normalized(cross(n, seed));
    const Vec3 v = cross(n, u);
    return {u, v};
}

// Boundary circle of the cap as points in R^3: center hn + rho*(cos u + sin v).
struct CapGeometry {
    Vec3 axis;       // unit spherical center
    double height;   // plane offset along axis, in (-1, 1]
    double rho;      // euclidean radius of the boundary circle
};

CapGeometry cap_geometry(const BoundaryCircle& cap) {
    const Vec3 n = normalized(cap.sphereCenter);
    const double h = 1.0 - cap.radius * cap.radius / 2.0; // |n - p|^2 = 2 - 2h
    const double rho2 = std::max(0.0, 1.0 - h * h);
    return {n, h, std::sqrt(rho2)};
}

Vec3 cap_point(const CapGeometry& g, const Vec3& u, const Vec3& v, double theta) {
    const double cu = std::cos(theta), sv = std::sin(theta);
    return Vec3{g.axis.x * g.height + g.rho * (u.x * cu + v.x * sv),
                g.axis.y * g.height + g.rho * (u.y * cu + v.y * sv),
                g.axis.z * g.height + g.rho * (u.z * cu + v.z * sv)};
}

// Circumcircle through three finite plane points; fails on collinear input.
bool circumcircle(Complex z1, Complex z2, Complex z3, Complex& center, double& radius) {
    const double ax = z1.real(), ay = z1.imag();
    const double bx = z2.real(), by = z2.imag();
    const double cx = z3.real(), cy = z3.imag();
    const double d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    const double scale = std::max({std::abs(z1 - z2), std::abs(z2 - z3), std::abs(z3 - z1)});
    if (std::abs(d) < 1e-13 * scale * scale * scale) return false;
    const double a2 = ax * ax + ay * ay;
    const double b2 = bx * bx + by * by;
    const double c2 = cx * cx + cy * cy;
    const double ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
    const double uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
    center = Complex(ux, uy);
    radius = std::abs(center - z1);
    return true;
}

} // namespace

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return Vec3{a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

Vec3 normalized(const Vec3& v) {
    const double n = norm(v);
    if (n == 0.0) fail(errc::degenerate_input, "cannot normalize zero vector");
    return Vec3{v.x / n, v.y / n, v.z / n};
}

ComplexPoint sphere_to_plane(const Vec3& p) {
    const double denom = 1.0 - p.z;
    if (std::abs(denom) <= 1e-15) return ComplexPoint::infinity();
    return ComplexPoint(Complex(p.x / denom, p.y / denom));
}

Vec3 plane_to_sphere(const ComplexPoint& z) {
    if (z.is_infinity()) return Vec3{0.0, 0.0, 1.0};
    const Complex v = z.value();
    const double n2 = std::norm(v);
    const double denom = n2 + 1.0;
    return Vec3{2.0 * v.real() / denom, 2.0 * v.imag() / denom, (n2 - 1.0) / denom};
}

BoundaryCircle BoundaryCircle::plane_circle(Complex center, double radius) {
    if (!(radius > 0.0)) fail(errc::degenerate_circle, "plane circle needs radius > 0");
    BoundaryCircle c;
    c.model = BoundaryModel::plane;
    c.planeCenter = center;
    c.radius = radius;
    return c;
}

BoundaryCircle BoundaryCircle::sphere_cap(const Vec3& center, double chordalRadius) {
    if (!(chordalRadius > 0.0) || chordalRadius > 2.0)
        fail(errc::degenerate_circle, "sphere cap needs chordal radius in (0, 2]");
    BoundaryCircle c;
    c.model = BoundaryModel::sphere;
    c.sphereCenter = normalized(center);
    c.radius = chordalRadius;
    return c;
}

TransferredCircle transfer_circle(const BoundaryCircle& circle) {
    if (circle.model == BoundaryModel::sphere) {
        const CapGeometry g = cap_geometry(circle);
        auto [u, v] = tangent_frame(g.axis);
        // Distance from the pole to the circle decides the line branch.
        const Vec3 e{0.0, 0.0, 1.0};
        const double offAxis = dot(e, g.axis);
        const double inPlane = std::sqrt(std::max(0.0, 1.0 - offAxis * offAxis));
        const double dPlane = offAxis - g.height;
        const double dRadial = inPlane - g.rho;
        if (std::sqrt(dPlane * dPlane + dRadial * dRadial) <= kPoleTol) {
            // Image is a line: take the two sample points farthest from the pole.
            std::array<ComplexPoint, 4> pts;
            for (int i = 0; i < 4; ++i)
                pts[i] = sphere_to_plane(cap_point(g, u, v, i * 1.5707963267948966));
            Complex best1{0, 0}, best2{0, 0};
            double sep = -1.0;
            for (int i = 0; i < 4; ++i) {
                for (int j = i + 1; j < 4; ++j) {
                    if (pts[i].is_infinity() || pts[j].is_infinity()) continue;
                    const double s = std::abs(pts[i].value() - pts[j].value());
                    if (s > sep) {
                        sep = s;
                        best1 = pts[i].value();
                        best2 = pts[j].value();
                    }
                }
            }
            if (sep <= 0.0)
                fail(errc::degenerate_circle, "cannot reconstruct line image");
            PlaneLine line;
            line.point = best1;
            line.direction = (best2 - best1) / std::abs(best2 - best1);
            return line;
        }
        std::array<Complex, 3> z;
        for (int i = 0; i < 3; ++i) {
            const ComplexPoint p = sphere_to_plane(cap_point(g, u, v, i * 2.0943951023931953));
            if (p.is_infinity())
                fail(errc::degenerate_circle, "sample point hit the pole");
            z[i] = p.value();
        }
        Complex center;
        double radius;
        if (!circumcircle(z[0], z[1], z[2], center, radius))
            fail(errc::degenerate_circle, "transferred points are collinear");
        return BoundaryCircle::plane_circle(center, radius);
    }

    // plane -> sphere: three transferred points span the cap plane.
    std::array<Vec3, 3> p;
    for (int i = 0; i < 3; ++i) {
        const double theta = i * 2.0943951023931953;
        const Complex z = circle.planeCenter + circle.radius * Complex(std::cos(theta), std::sin(theta));
        p[i] = plane_to_sphere(ComplexPoint(z));
    }
    const Vec3 d1{p[1].x - p[0].x, p[1].y - p[0].y, p[1].z - p[0].z};
    const Vec3 d2{p[2].x - p[0].x, p[2].y - p[0].y, p[2].z - p[0].z};
    Vec3 n = normalized(cross(d1, d2));
    double h = dot(n, p[0]);
    if (h < 0.0 || (h == 0.0 && (n.z < 0.0 || (n.z == 0.0 && (n.y < 0.0 || (n.y == 0.0 && n.x < 0.0)))))) {
        n = Vec3{-n.x, -n.y, -n.z};
        h = -h;
    }
    const double chordal = std::sqrt(std::max(0.0, 2.0 - 2.0 * h));
    return BoundaryCircle::sphere_cap(n, chordal);
}

double ball_isometric_radius(double translationLength) {
    if (!(translationLength > 0.0))
        fail(errc::nonpositive_length, "translation length must be positive");
    return 1.0 / std::sinh(translationLength / 2.0);
}

std::pair<BoundaryCircle, BoundaryCircle> vertical_axis_isometric_caps(double multiplierModulus) {
    if (!(multiplierModulus > 1.0))
        fail(errc::out_of_range, "multiplier modulus must exceed 1");
    const double T = 2.0 * std::log(multiplierModulus);
    const double r = ball_isometric_radius(T);
    // Isometric spheres meet the unit sphere orthogonally: centers at distance
    // sqrt(1 + r^2) on the axis, caps at height +/- 1/sqrt(1 + r^2).
    const double h = 1.0 / std::sqrt(1.0 + r * r);
    const double chordal = std::sqrt(2.0 - 2.0 * h);
    const BoundaryCircle capMap = BoundaryCircle::sphere_cap(Vec3{0.0, 0.0, 1.0}, chordal);
    const BoundaryCircle capInv = BoundaryCircle::sphere_cap(Vec3{0.0, 0.0, -1.0}, chordal);
    return {capMap, capInv};
}

IsometricSphereData vertical_axis_sphere_data(const ClassifiedMap& alphaDiagonal) {
    if (!alphaDiagonal.map().is_diagonal())
        fail(errc::not_diagonal, "vertical-axis data requires a diagonal map");
    const double lam = std::abs(alphaDiagonal.multiplier());
    IsometricSphereData data;
    data.mapRef = alphaDiagonal.map();
    data.ballRadius = 2.0 * lam / (lam * lam - 1.0);
    data.deltaMap = lam;
    data.deltaInverse = 1.0 / lam;
    return data;
}

MarginReport annulus_margins(Complex lambda, const ComplexPoint& zl, const ComplexPoint& zu,
                             Complex traceBeta) {
    const double lam = std::abs(lambda);
    const double ml = zl.modulus();
    const double mu = zu.modulus();
    const double tr = std::abs(traceBeta);
    MarginReport report;
    report.contained = (1.0 / lam < ml) && (ml <= mu) && (mu < lam);
    report.upperGap = (mu - lam) * tr;
    report.lowerGap = (ml - 1.0 / lam) * tr;
    return report;
}

} // namespace schottky
