#include "schottky/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace schottky {

namespace {

double displacement_sum(const std::vector<double>& d, double D) {
    double s = 0.0;
    for (double di : d) s += 1.0 / (1.0 + std::exp(D * di));
    return s;
}

// Fixed-point sum of the fix-trace family for the word w = alpha^k beta alpha^l:
// min over the two +/- pairings of |z_pm - zeta_w| + |z_mp - eta_w|.
double fixed_point_sum(const ClassifiedMap& w) {
    const MoebiusMap& m = w.map();
    if (std::abs(m.c()) == 0.0)
        fail(errc::fixes_infinity, "word fixes infinity; fixed-point sum undefined");
    const Complex eta = -m.d() / m.c();
    const Complex zeta = m.a() / m.c();
    auto [zm, zp] = fixed_points(w);
    const double pairing1 = std::abs(zp.value() - zeta) + std::abs(zm.value() - eta);
    const double pairing2 = std::abs(zm.value() - zeta) + std::abs(zp.value() - eta);
    return std::min(pairing1, pairing2);
}

double require_constant(const std::map<std::string, double>& constants, const char* name) {
    auto it = constants.find(name);
    if (it == constants.end())
        fail(errc::missing_constant, std::string("diagnostic needs constant '") + name + "'");
    return it->second;
}

} // namespace

ExponentBound hou_lower_bound_from_displacements(const std::vector<double>& displacements,
                                                 const std::vector<std::string>& names) {
    if (displacements.empty())
        fail(errc::nonpositive_displacement, "no displacements given");
    for (double d : displacements)
        if (!(d > 0.0))
            fail(errc::nonpositive_displacement, "displacements must be positive");

    ExponentBound bound;
    bound.kind = BoundKind::lower_certified;
    for (std::size_t i = 0; i < displacements.size(); ++i) {
        const std::string name = i < names.size() ? names[i] : "g" + std::to_string(i + 1);
        bound.witnesses.emplace_back(name, displacements[i]);
    }

    // The sum is strictly decreasing in D, equals k/2 at D = 0 and tends to 0.
    if (displacements.size() == 1) {
        bound.dStar = 0.0;
        return bound;
    }
    double lo = 0.0;
    double hi = 1.0;
    int guard = 0;
    while (displacement_sum(displacements, hi) > 0.5) {
        hi *= 2.0;
        if (++guard > 200) fail(errc::degenerate_input, "bisection bracket failed to close");
    }
    for (int i = 0; i < 200 && (hi - lo) > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (displacement_sum(displacements, mid) > 0.5)
            lo = mid;
        else
            hi = mid;
    }
    bound.dStar = 0.5 * (lo + hi);
    return bound;
}

ExponentBound hou_lower_bound(const std::vector<ClassifiedMap>& generators,
                              const UhsPoint& basepoint) {
    std::vector<double> displacements;
    std::vector<std::string> names;
    displacements.reserve(generators.size());
    for (std::size_t i = 0; i < generators.size(); ++i) {
        displacements.push_back(orbit_distance_at(generators[i].map(), basepoint));
        names.push_back(i == 0 ? "alpha" : i == 1 ? "beta" : "g" + std::to_string(i + 1));
    }
    ExponentBound bound = hou_lower_bound_from_displacements(displacements, names);
    bound.basepoint = basepoint;
    return bound;
}

double cor2_min_displacement(double d1, double D) {
    if (!(d1 > 0.0) || !(D > 0.0) || !(std::exp(D * d1) > 1.0))
        fail(errc::out_of_range, "cor2 bound needs d1 > 0, D > 0");
    // log((e+3)/(e-1)) = log1p(4/(e-1)); the expm1/log1p form survives large
    // D*d1 where the naive quotient rounds to 1.
    return std::log1p(4.0 / std::expm1(D * d1)) / D;
}

BoostResult displacement_boost(const MarkedGroup& pair, const UhsPoint& basepoint, double D,
                               long maxPower) {
    if (!(D > 0.0)) fail(errc::out_of_range, "D must be positive");
    const double target = std::log(3.0) / D;
    for (long step = 0; step <= 2 * maxPower; ++step) {
        // m = 0, +1, -1, +2, -2, ...
        const long m = (step % 2 == 1) ? (step + 1) / 2 : -step / 2;
        const MoebiusMap word = compose(moebius_power(pair.alpha.map(), m), pair.beta.map());
        const double d = orbit_distance_at(word, basepoint);
        if (d >= target) return BoostResult{word, m, d};
    }
    fail(errc::search_exhausted,
         "no power up to |m| = " + std::to_string(maxPower) + " reaches log(3)/D");
}

namespace {

// Raw 2x2 products for the word enumeration. Products of unit-determinant
// matrices keep det = 1 algebraically, but recomputing ad - bc from entries
// of magnitude ~1e8+ cancels catastrophically, so long words must not be
// renormalized entry-wise; the displacement only needs the entry norms.
struct RawMat {
    Complex a, b, c, d;
};

RawMat raw_mul(const RawMat& g, const RawMat& h) {
    return {g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d, g.c * h.a + g.d * h.c,
            g.c * h.b + g.d * h.d};
}

double raw_orbit_distance(const RawMat& m) {
    const double coshd =
        (std::norm(m.a) + std::norm(m.b) + std::norm(m.c) + std::norm(m.d)) / 2.0;
    if (coshd <= 1.0) return 0.0;
    if (coshd > 1e150) return std::log(2.0) + std::log(coshd);
    return std::log(coshd + std::sqrt(coshd * coshd - 1.0));
}

void enumerate_reduced(const std::vector<RawMat>& letters, const std::vector<int>& inverseOf,
                       int maxLen, const std::function<void(const RawMat&, int)>& visit) {
    struct Frame {
        RawMat word;
        int lastLetter;
        int length;
    };
    std::vector<Frame> stack;
    for (int i = 0; i < static_cast<int>(letters.size()); ++i)
        stack.push_back({letters[i], i, 1});
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        visit(f.word, f.length);
        if (f.length == maxLen) continue;
        for (int i = 0; i < static_cast<int>(letters.size()); ++i) {
            if (i == inverseOf[f.lastLetter]) continue;
            stack.push_back({raw_mul(f.word, letters[i]), i, f.length + 1});
        }
    }
}

} // namespace

ExponentBound growth_exponent_estimate(const std::vector<MoebiusMap>& generators,
                                       int maxWordLength, const UhsPoint& basepoint) {
    if (generators.empty()) fail(errc::degenerate_input, "no generators");
    if (maxWordLength < 2 || maxWordLength > 14)
        fail(errc::budget_exceeded, "word length must be in [2, 14]");

    // Pre-conjugate so displacements reduce to the basepoint-at-j formula.
    const MoebiusMap toOrigin = basepoint_to_origin(basepoint);
    std::vector<RawMat> letters;
    std::vector<int> inverseOf;
    for (const MoebiusMap& g : generators) {
        const MoebiusMap h = conjugate(toOrigin, g);
        letters.push_back({h.a(), h.b(), h.c(), h.d()});
        letters.push_back({h.d(), -h.b(), -h.c(), h.a()});
        const int base = static_cast<int>(letters.size()) - 2;
        inverseOf.push_back(base + 1);
        inverseOf.push_back(base);
    }

    std::vector<double> displacements;
    double completenessCap = std::numeric_limits<double>::infinity();
    enumerate_reduced(letters, inverseOf, maxWordLength, [&](const RawMat& w, int length) {
        const double d = raw_orbit_distance(w);
        displacements.push_back(d);
        // Words beyond maxWordLength are missing from the count, so N(T) is
        // only trustworthy up to the cheapest full-length word.
        if (length == maxWordLength) completenessCap = std::min(completenessCap, d);
    });
    std::sort(displacements.begin(), displacements.end());

    // Least-squares slope of ln N(T) against T over the upper half of the
    // displacement range, capped at the completeness horizon; small words
    // below the window are transients.
    const double tMin = displacements.front();
    const double tMax = std::min(displacements.back(), completenessCap);
    const double windowLo = tMin + 0.5 * (tMax - tMin);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < displacements.size(); ++i) {
        const double t = displacements[i];
        if (t < windowLo || t > tMax) continue;
        const double y = std::log(static_cast<double>(i + 1));
        sx += t;
        sy += y;
        sxx += t * t;
        sxy += t * y;
        ++n;
    }
    ExponentBound bound;
    bound.kind = BoundKind::growth_estimate;
    bound.basepoint = basepoint;
    const double denom = static_cast<double>(n) * sxx - sx * sx;
    if (n < 2 || std::abs(denom) < 1e-30) {
        bound.dStar = 0.0; // flat window; no measurable growth
        return bound;
    }
    bound.dStar = std::max(0.0, (static_cast<double>(n) * sxy - sx * sy) / denom);
    bound.witnesses.emplace_back("words", static_cast<double>(displacements.size()));
    bound.witnesses.emplace_back("max_displacement", tMax);
    return bound;
}

ExponentBound growth_exponent_estimate(const MarkedGroup& pair, int maxWordLength,
                                       const UhsPoint& basepoint) {
    return growth_exponent_estimate({pair.alpha.map(), pair.beta.map()}, maxWordLength,
                                    basepoint);
}

const char* to_string(InequalityId id) noexcept {
    switch (id) {
        case InequalityId::prop_trace: return "prop-trace";
        case InequalityId::fix_trace: return "fix-trace";
        case InequalityId::fix_bound_1: return "fix-bound-1";
        case InequalityId::two_tr_fixed: return "2-tr-fixed";
        case InequalityId::fix_bound_2: return "fix-bound-2";
        case InequalityId::fix_bound_3: return "fix-bound-3";
        case InequalityId::eq_identity: return "eq-identity";
    }
    return "?";
}

InequalityId inequality_from_string(const std::string& name) {
    for (InequalityId id : {InequalityId::prop_trace, InequalityId::fix_trace,
                            InequalityId::fix_bound_1, InequalityId::two_tr_fixed,
                            InequalityId::fix_bound_2, InequalityId::fix_bound_3,
                            InequalityId::eq_identity}) {
        if (name == to_string(id)) return id;
    }
    fail(errc::out_of_range, "unknown inequality id '" + name + "'");
}

DiagnosticReport diagnostic_inequality(InequalityId id, const MarkedGroup& pair, long k, long l,
                                       const std::map<std::string, double>& constants) {
    if (!pair.alpha.map().is_diagonal())
        fail(errc::not_normalized, "diagnostics require a pair with diagonal alpha");

    const Complex lambda = pair.alpha.map().a();
    const MoebiusMap& beta = pair.beta.map();
    const MoebiusMap word = compose(moebius_power(pair.alpha.map(), k),
                                    compose(beta, moebius_power(pair.alpha.map(), l)));
    const ClassifiedMap wordC(word);
    const double trBeta = std::abs(beta.trace());
    const double trWord = std::abs(word.trace());
    const double lamAbs = std::abs(lambda);

    DiagnosticReport report;
    report.id = id;
    report.constants = constants;

    switch (id) {
        case InequalityId::prop_trace: {
            const double rho = require_constant(constants, "rho");
            const double D = require_constant(constants, "D");
            if (!(D > 0.0)) fail(errc::out_of_range, "prop-trace needs D > 0");
            const double pw = std::pow(lamAbs, 2.0 * D);
            report.lhs = rho * std::pow((pw + 3.0) / (pw - 1.0), 1.0 / (2.0 * D));
            report.rhs = trBeta;
            report.satisfied = report.lhs <= report.rhs;
            break;
        }
        case InequalityId::fix_trace: {
            const double rho = require_constant(constants, "rho");
            report.lhs = fixed_point_sum(wordC);
            report.rhs = rho / (trBeta * std::pow(lamAbs, static_cast<double>(l - k)));
            report.satisfied = report.lhs <= report.rhs;
            break;
        }
        case InequalityId::fix_bound_1: {
            const double delta = require_constant(constants, "delta");
            report.lhs = fixed_point_sum(wordC);
            report.rhs = delta * (lamAbs * lamAbs - 1.0);
            report.satisfied = report.lhs <= report.rhs;
            break;
        }
        case InequalityId::two_tr_fixed: {
            const double rho = require_constant(constants, "rho");
            report.lhs = fixed_point_sum(wordC);
            report.rhs = rho / (trWord * trBeta);
            report.satisfied = report.lhs <= report.rhs;
            break;
        }
        case InequalityId::fix_bound_2: {
            const double sigma1 = require_constant(constants, "sigma1");
            const double sigma2 = require_constant(constants, "sigma2");
            auto [zm, zp] = fixed_points(wordC);
            report.mid = std::abs(zp.value() - zm.value());
            report.lhs = sigma2 * trWord / trBeta;
            report.rhs = sigma1 * trWord / trBeta;
            report.satisfied = report.lhs <= report.mid && report.mid <= report.rhs;
            break;
        }
        case InequalityId::fix_bound_3: {
            const double kappa = require_constant(constants, "kappa");
            const double D = require_constant(constants, "D");
            if (!(D > 0.0)) fail(errc::out_of_range, "fix-bound-3 needs D > 0");
            auto [zm, zp] = fixed_points(wordC);
            report.lhs = kappa / (D * trBeta);
            report.rhs = std::abs(zp.value() - zm.value());
            report.satisfied = report.lhs <= report.rhs;
            break;
        }
        case InequalityId::eq_identity: {
            if (std::abs(beta.c()) == 0.0)
                fail(errc::fixes_infinity, "eq-identity needs c != 0");
            const Complex zeta = beta.a() / beta.c();
            const Complex dOverC = beta.d() / beta.c();
            report.lhs = std::abs(zeta * std::pow(lambda, 2.0 * static_cast<double>(k)) +
                                  dOverC * std::pow(lambda, -2.0 * static_cast<double>(l)));
            report.rhs = std::abs(word.trace() /
                                  (beta.c() * std::pow(lambda, static_cast<double>(l - k))));
            report.satisfied =
                std::abs(report.lhs - report.rhs) <= 1e-10 * std::max({1.0, report.lhs, report.rhs});
            break;
        }
    }
    return report;
}

} // namespace schottky
