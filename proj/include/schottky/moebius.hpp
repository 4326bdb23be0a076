#pragma once

#include <utility>

#include "schottky/complex_point.hpp"
#include "schottky/errors.hpp"

namespace schottky {

/// Interior point of the upper half-space model, written as a horizontal
/// complex coordinate plus a positive height. Default is j = (0,0,1).
struct UhsPoint {
    Complex horizontal{0.0, 0.0};
    double height = 1.0;
};

/// Determinant-normalized Moebius transformation. The stored matrix is the
/// canonical SL(2,C) lift of the PSL(2,C) element: ad - bc = 1, and the first
/// nonzero entry in the order a, b, c, d has argument in (-pi/2, pi/2], so
/// equal group elements compare equal entrywise.
class MoebiusMap {
public:
    MoebiusMap() : a_(1.0), b_(0.0), c_(0.0), d_(1.0) {}

    /// Normalizes on construction. Throws bad_determinant if |ad - bc| < 1e-8.
    MoebiusMap(Complex a, Complex b, Complex c, Complex d);

    Complex a() const { return a_; }
    Complex b() const { return b_; }
    Complex c() const { return c_; }
    Complex d() const { return d_; }

    Complex trace() const { return a_ + d_; }
    Complex determinant() const { return a_ * d_ - b_ * c_; }

    MoebiusMap inverse() const { return MoebiusMap(d_, -b_, -c_, a_); }

    bool fixes_infinity() const { return std::abs(c_) == 0.0; }
    bool is_diagonal(double tol = 1e-14) const {
        return std::abs(b_) <= tol && std::abs(c_) <= tol;
    }

    /// (az + b)/(cz + d) on the extended plane; INFINITY maps to a/c and the
    /// pole -d/c maps to INFINITY.
    ComplexPoint apply(const ComplexPoint& z) const;

    /// Modulus of the derivative at a finite non-pole point: 1/|cz+d|^2.
    double derivative_modulus(Complex z) const;

    static MoebiusMap identity() { return MoebiusMap(); }

    /// diag(lambda, 1/lambda), acting as z -> lambda^2 z.
    static MoebiusMap diagonal(Complex lambda);

    /// z -> s z as a normalized matrix.
    static MoebiusMap scaling(Complex s);

    /// z -> z + t.
    static MoebiusMap translation(Complex t);

    /// Map with fixed points p, q and derivative `derivAtP` at p (so the
    /// derivative at q is 1/derivAtP). Either fixed point may be INFINITY.
    static MoebiusMap with_fixed_points(const ComplexPoint& p, const ComplexPoint& q,
                                        Complex derivAtP);

private:
    Complex a_, b_, c_, d_;
    void normalize();
};

MoebiusMap compose(const MoebiusMap& g, const MoebiusMap& h);
MoebiusMap conjugate(const MoebiusMap& m, const MoebiusMap& g); // m g m^{-1}
MoebiusMap moebius_power(const MoebiusMap& g, long k);

bool approx_equal(const MoebiusMap& g, const MoebiusMap& h, double tol = 1e-12);

enum class MapKind { loxodromic, parabolic, elliptic, identity };

const char* to_string(MapKind kind) noexcept;

/// A Moebius map together with its conjugacy classification. Loxodromic maps
/// carry the multiplier lambda (|lambda| > 1, with lambda + 1/lambda = tr) and
/// the translation length T = 2 ln|lambda|.
class ClassifiedMap {
public:
    ClassifiedMap() : kind_(MapKind::identity) {}
    explicit ClassifiedMap(const MoebiusMap& m);

    const MoebiusMap& map() const { return map_; }
    MapKind kind() const { return kind_; }
    bool loxodromic() const { return kind_ == MapKind::loxodromic; }

    /// Throws parabolic_or_elliptic unless loxodromic.
    Complex multiplier() const;
    double translation_length() const;

private:
    MoebiusMap map_;
    MapKind kind_;
    Complex multiplier_{0.0, 0.0};
    double translationLength_ = 0.0;
};

/// Fixed points (z_-, z_+) from the quadratic formula
/// z_{+/-} = ((a - d) +/- sqrt(tr^2 - 4)) / (2c), principal branch of sqrt
/// (nonnegative real part; sqrt of a negative real has positive imaginary
/// part). When c = 0 the convention is (b/(d-a), INFINITY).
/// Throws parabolic_or_elliptic unless loxodromic.
std::pair<ComplexPoint, ComplexPoint> fixed_points(const ClassifiedMap& g);

/// Same two points ordered by modulus, |z_l| <= |z_u|; INFINITY counts as
/// largest and modulus ties break lexicographically by (re, im).
std::pair<ComplexPoint, ComplexPoint> fixed_points_sorted(const ClassifiedMap& g);

/// tr(alpha^k beta alpha^l) = a lambda^{k+l} + d lambda^{-(k+l)} for diagonal
/// alpha = diag(lambda, 1/lambda); lambda is alpha's stored (1,1) entry.
/// Throws not_diagonal if alpha has off-diagonal entries above 1e-14.
Complex word_trace(const ClassifiedMap& alpha, const MoebiusMap& beta, long k, long l);

/// Hyperbolic displacement dist(j, g j) of the basepoint j = (0,0,1):
/// cosh d = (|a|^2 + |b|^2 + |c|^2 + |d|^2) / 2.
double orbit_distance(const MoebiusMap& g);

/// Displacement of an arbitrary interior basepoint.
double orbit_distance_at(const MoebiusMap& g, const UhsPoint& x);

/// Conjugator moving the basepoint x to j = (0,0,1).
MoebiusMap basepoint_to_origin(const UhsPoint& x);

// Hook for ill-conditioning notices (|c| < 1e-10 but nonzero, determinant
// renormalization on parse, etc.). Never called on the error path; default
// is a no-op.
using WarningHandler = void (*)(const char* message);
void set_condition_warning_handler(WarningHandler handler);
WarningHandler get_condition_warning_handler();
void emit_condition_warning(const char* message);

} // namespace schottky
