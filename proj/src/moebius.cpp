#include "schottky/moebius.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace schottky {

namespace {

WarningHandler g_warningHandler = nullptr;

void warn(const char* message) {
    if (g_warningHandler) g_warningHandler(message);
}

constexpr double kClassifyTol = 1e-12;

// arccosh that survives arguments up to ~1e300.
double acosh_stable(double x) {
    if (x <= 1.0) return 0.0;
    if (x > 1e150) return std::log(2.0) + std::log(x);
    return std::log(x + std::sqrt(x * x - 1.0));
}

} // namespace

void set_condition_warning_handler(WarningHandler handler) {
    g_warningHandler = handler;
}

WarningHandler get_condition_warning_handler() { return g_warningHandler; }

void emit_condition_warning(const char* message) { warn(message); }

MoebiusMap::MoebiusMap(Complex a, Complex b, Complex c, Complex d)
    : a_(a), b_(b), c_(c), d_(d) {
    normalize();
}

void MoebiusMap::normalize() {
    const Complex det = a_ * d_ - b_ * c_;
    if (std::abs(det) < 1e-8)
        fail(errc::bad_determinant, "matrix is singular or nearly so");
    const Complex s = std::sqrt(det);
    a_ /= s;
    b_ /= s;
    c_ /= s;
    d_ /= s;
    // Canonical SL(2,C) lift: first nonzero entry has argument in (-pi/2, pi/2].
    const std::array<Complex, 4> entries{a_, b_, c_, d_};
    for (const Complex& e : entries) {
        if (std::abs(e) == 0.0) continue;
        const bool keep = e.real() > 0.0 || (e.real() == 0.0 && e.imag() > 0.0);
        if (!keep) {
            a_ = -a_;
            b_ = -b_;
            c_ = -c_;
            d_ = -d_;
        }
        break;
    }
    if (std::abs(c_) != 0.0 && std::abs(c_) < 1e-10)
        warn("moebius: |c| below 1e-10, isometric-circle data is ill-conditioned");
}

ComplexPoint MoebiusMap::apply(const ComplexPoint& z) const {
    if (z.is_infinity()) {
        if (fixes_infinity()) return ComplexPoint::infinity();
        return ComplexPoint(a_ / c_);
    }
    const Complex denom = c_ * z.value() + d_;
    if (std::abs(denom) == 0.0) return ComplexPoint::infinity();
    return ComplexPoint((a_ * z.value() + b_) / denom);
}

double MoebiusMap::derivative_modulus(Complex z) const {
    const double denom = std::norm(c_ * z + d_);
    return 1.0 / denom;
}

MoebiusMap MoebiusMap::diagonal(Complex lambda) {
    if (std::abs(lambda) == 0.0)
        fail(errc::bad_determinant, "diagonal multiplier must be nonzero");
    return MoebiusMap(lambda, 0.0, 0.0, 1.0 / lambda);
}

MoebiusMap MoebiusMap::scaling(Complex s) {
    if (std::abs(s) == 0.0)
        fail(errc::bad_determinant, "scaling factor must be nonzero");
    return MoebiusMap(s, 0.0, 0.0, 1.0);
}

MoebiusMap MoebiusMap::translation(Complex t) {
    return MoebiusMap(1.0, t, 0.0, 1.0);
}

MoebiusMap MoebiusMap::with_fixed_points(const ComplexPoint& p, const ComplexPoint& q,
                                         Complex derivAtP) {
    if (std::abs(derivAtP) == 0.0)
        fail(errc::bad_determinant, "derivative at fixed point must be nonzero");
    const Complex s = std::sqrt(derivAtP); // diag(s, 1/s) acts as z -> derivAtP * z
    const MoebiusMap core(s, 0.0, 0.0, 1.0 / s);
    // Conjugate by the map sending p -> 0, q -> infinity.
    MoebiusMap toStd;
    if (p.is_infinity() && q.is_infinity())
        fail(errc::degenerate_fixed_point, "fixed points coincide at infinity");
    if (p.is_infinity()) {
        // p = inf -> 0, q -> inf: z -> 1/(z - q).
        toStd = MoebiusMap(0.0, 1.0, 1.0, -q.value());
    } else if (q.is_infinity()) {
        toStd = MoebiusMap(1.0, -p.value(), 0.0, 1.0);
    } else {
        if (std::abs(p.value() - q.value()) == 0.0)
            fail(errc::degenerate_fixed_point, "fixed points coincide");
        toStd = MoebiusMap(1.0, -p.value(), 1.0, -q.value());
    }
    return compose(toStd.inverse(), compose(core, toStd));
}

MoebiusMap compose(const MoebiusMap& g, const MoebiusMap& h) {
    return MoebiusMap(g.a() * h.a() + g.b() * h.c(), g.a() * h.b() + g.b() * h.d(),
                      g.c() * h.a() + g.d() * h.c(), g.c() * h.b() + g.d() * h.d());
}

MoebiusMap conjugate(const MoebiusMap& m, const MoebiusMap& g) {
    return compose(m, compose(g, m.inverse()));
}

MoebiusMap moebius_power(const MoebiusMap& g, long k) {
    if (k == 0) return MoebiusMap::identity();
    if (g.is_diagonal())
        return MoebiusMap::diagonal(std::pow(g.a(), static_cast<double>(k)));
    MoebiusMap base = k > 0 ? g : g.inverse();
    unsigned long n = k > 0 ? static_cast<unsigned long>(k)
                            : static_cast<unsigned long>(-(k + 1)) + 1ul;
    MoebiusMap acc;
    while (n > 0) {
        if (n & 1ul) acc = compose(acc, base);
        base = compose(base, base);
        n >>= 1;
    }
    return acc;
}

bool approx_equal(const MoebiusMap& g, const MoebiusMap& h, double tol) {
    auto near = [tol](Complex x, Complex y) { return std::abs(x - y) <= tol; };
    if (near(g.a(), h.a()) && near(g.b(), h.b()) && near(g.c(), h.c()) && near(g.d(), h.d()))
        return true;
    // Same PSL element, opposite lift (happens right at the canonicalization
    // boundary when entries sit on the imaginary axis).
    return near(g.a(), -h.a()) && near(g.b(), -h.b()) && near(g.c(), -h.c()) &&
           near(g.d(), -h.d());
}

const char* to_string(MapKind kind) noexcept {
    switch (kind) {
        case MapKind::loxodromic: return "loxodromic";
        case MapKind::parabolic: return "parabolic";
        case MapKind::elliptic: return "elliptic";
        case MapKind::identity: return "identity";
    }
    return "?";
}

ClassifiedMap::ClassifiedMap(const MoebiusMap& m) : map_(m) {
    const Complex tr = m.trace();
    const Complex tr2 = tr * tr;
    // Loxodromic iff tr^2 lies off the real interval [0,4]; the tolerance band
    // around the interval is classified non-loxodromic.
    const bool onRealInterval = std::abs(tr2.imag()) <= kClassifyTol &&
                                tr2.real() >= -kClassifyTol &&
                                tr2.real() <= 4.0 + kClassifyTol;
    if (!onRealInterval) {
        kind_ = MapKind::loxodromic;
        const Complex s = std::sqrt(tr2 - 4.0);
        const Complex r1 = (tr + s) / 2.0;
        const Complex r2 = (tr - s) / 2.0;
        multiplier_ = std::abs(r1) >= std::abs(r2) ? r1 : r2;
        translationLength_ = 2.0 * std::log(std::abs(multiplier_));
        return;
    }
    const MoebiusMap id;
    if (approx_equal(m, id, kClassifyTol)) {
        kind_ = MapKind::identity;
    } else if (std::abs(tr2 - 4.0) <= kClassifyTol) {
        kind_ = MapKind::parabolic;
    } else {
        kind_ = MapKind::elliptic;
    }
}

Complex ClassifiedMap::multiplier() const {
    if (!loxodromic())
        fail(errc::parabolic_or_elliptic,
             std::string("multiplier undefined for ") + to_string(kind_) + " map");
    return multiplier_;
}

double ClassifiedMap::translation_length() const {
    if (!loxodromic())
        fail(errc::parabolic_or_elliptic,
             std::string("translation length undefined for ") + to_string(kind_) + " map");
    return translationLength_;
}

std::pair<ComplexPoint, ComplexPoint> fixed_points(const ClassifiedMap& g) {
    if (!g.loxodromic())
        fail(errc::parabolic_or_elliptic, "fixed points require a loxodromic map");
    const MoebiusMap& m = g.map();
    if (m.fixes_infinity()) {
        // a d = 1 and tr^2 != 4 guarantee a != d here.
        const Complex finite = m.b() / (m.d() - m.a());
        return {ComplexPoint(finite), ComplexPoint::infinity()};
    }
    const Complex tr = m.trace();
    const Complex s = std::sqrt(tr * tr - 4.0);
    const Complex ad = m.a() - m.d();
    // Quadratic formula; the cancelling root is recovered from the product
    // z_+ z_- = -b/c so near-diagonal maps keep full precision.
    Complex zMinus, zPlus;
    if (std::abs(ad + s) >= std::abs(ad - s)) {
        zPlus = (ad + s) / (2.0 * m.c());
        zMinus = (-m.b() / m.c()) / zPlus;
    } else {
        zMinus = (ad - s) / (2.0 * m.c());
        zPlus = (-m.b() / m.c()) / zMinus;
    }
    return {ComplexPoint(zMinus), ComplexPoint(zPlus)};
}

std::pair<ComplexPoint, ComplexPoint> fixed_points_sorted(const ClassifiedMap& g) {
    auto [zm, zp] = fixed_points(g);
    const double mm = zm.modulus();
    const double mp = zp.modulus();
    if (mm < mp) return {zm, zp};
    if (mp < mm) return {zp, zm};
    // Tie on modulus: lexicographic (re, im), smaller first.
    const Complex u = zm.value();
    const Complex v = zp.value();
    if (u.real() < v.real() || (u.real() == v.real() && u.imag() <= v.imag()))
        return {zm, zp};
    return {zp, zm};
}

Complex word_trace(const ClassifiedMap& alpha, const MoebiusMap& beta, long k, long l) {
    const MoebiusMap& am = alpha.map();
    if (!am.is_diagonal())
        fail(errc::not_diagonal, "word_trace requires diagonal alpha");
    const Complex lambda = am.a();
    const double kl = static_cast<double>(k + l);
    return beta.a() * std::pow(lambda, kl) + beta.d() * std::pow(lambda, -kl);
}

double orbit_distance(const MoebiusMap& g) {
    const double coshd = (std::norm(g.a()) + std::norm(g.b()) + std::norm(g.c()) +
                          std::norm(g.d())) /
                         2.0;
    return acosh_stable(coshd);
}

MoebiusMap basepoint_to_origin(const UhsPoint& x) {
    if (!(x.height > 0.0))
        fail(errc::out_of_range, "basepoint height must be positive");
    // z -> (z - horizontal)/height extends to an isometry sending x to j.
    const double s = 1.0 / std::sqrt(x.height);
    return MoebiusMap(s, -x.horizontal * s, 0.0, x.height * s);
}

double orbit_distance_at(const MoebiusMap& g, const UhsPoint& x) {
    return orbit_distance(conjugate(basepoint_to_origin(x), g));
}

} // namespace schottky
