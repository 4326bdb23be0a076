#pragma once

#include <map>
#include <string>
#include <vector>

#include "schottky/markings.hpp"
#include "schottky/moebius.hpp"

namespace schottky {

enum class BoundKind { lower_certified, growth_estimate };

/// A bound on the critical exponent. For lower_certified bounds, dStar solves
///   sum_i 1/(1 + exp(dStar * d_i)) = 1/2
/// over the witness displacements d_i, so D_Gamma >= dStar for any free
/// purely loxodromic marking by the displacement inequality.
struct ExponentBound {
    double dStar = 0.0;
    std::vector<std::pair<std::string, double>> witnesses;
    UhsPoint basepoint;
    BoundKind kind = BoundKind::lower_certified;
};

/// Core solver on raw displacements. All displacements must be positive; a
/// single generator yields dStar = 0 (the sum already equals 1/2 at D = 0).
/// Bisection to 1e-12.
ExponentBound hou_lower_bound_from_displacements(const std::vector<double>& displacements,
                                                 const std::vector<std::string>& names = {});

/// Displacement bound for a generating set at a basepoint.
ExponentBound hou_lower_bound(const std::vector<ClassifiedMap>& generators,
                              const UhsPoint& basepoint = {});

/// Minimum displacement of the second generator forced by the first:
///   (1/D) ln((e^{D d1} + 3)/(e^{D d1} - 1)).
/// Throws out_of_range when e^{D d1} <= 1.
double cor2_min_displacement(double d1, double D);

/// Scans alpha^m beta for m = 0, +/-1, +/-2, ... until the displacement
/// reaches ln 3 / D; the success guarantee assumes dis(x, alpha x) >=
/// dis(x, beta x) and D >= D_Gamma, but the scan itself runs for any pair.
/// Throws search_exhausted past |m| = maxPower.
struct BoostResult {
    MoebiusMap element;
    long m = 0;
    double displacement = 0.0;
};

BoostResult displacement_boost(const MarkedGroup& pair, const UhsPoint& basepoint, double D,
                               long maxPower = 64);

/// Heuristic abscissa estimate: enumerates reduced words up to the given
/// length, counts orbit points N(T) within distance T, and fits a least-squares
/// slope to ln N(T) over the upper half of the displacement range. Not a
/// certified bound. Throws budget_exceeded for maxWordLength > 14.
ExponentBound growth_exponent_estimate(const std::vector<MoebiusMap>& generators,
                                       int maxWordLength, const UhsPoint& basepoint = {});

ExponentBound growth_exponent_estimate(const MarkedGroup& pair, int maxWordLength,
                                       const UhsPoint& basepoint = {});

/// The asymptotic inequalities of the fixed-point estimates, evaluated
/// numerically with caller-supplied constants. Reports, never asserts.
enum class InequalityId {
    prop_trace,  // rho ((L^{2D}+3)/(L^{2D}-1))^{1/(2D)} <= |tr beta|; needs rho, D
    fix_trace,   // fixed-point sum <= rho/(|tr beta| |lambda^{l-k}|); needs rho
    fix_bound_1, // fixed-point sum <= delta (|lambda|^2 - 1); needs delta
    two_tr_fixed,// fixed-point sum <= rho/(|tr w| |tr beta|); needs rho
    fix_bound_2, // sigma2 |tr w|/|tr beta| <= |z_+ - z_-| <= sigma1 |tr w|/|tr beta|
    fix_bound_3, // kappa/(D |tr beta|) <= |z_+ - z_-|; needs kappa, D
    eq_identity, // |zeta lambda^{2k} + (d/c) lambda^{-2l}| = |tr w/(c lambda^{l-k})|, exact
};

const char* to_string(InequalityId id) noexcept;
InequalityId inequality_from_string(const std::string& name);

struct DiagnosticReport {
    InequalityId id = InequalityId::fix_trace;
    double lhs = 0.0;
    double rhs = 0.0;
    double mid = 0.0; // the sandwiched quantity, fix_bound_2 only
    std::map<std::string, double> constants;
    bool satisfied = false;
};

/// Requires a pair in standard position (alpha diagonal). The word under test
/// is w = alpha^k beta alpha^l. Throws not_normalized / missing_constant.
DiagnosticReport diagnostic_inequality(InequalityId id, const MarkedGroup& pair, long k, long l,
                                       const std::map<std::string, double>& constants);

} // namespace schottky
