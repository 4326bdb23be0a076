#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <ostream>

namespace schottky {

using Complex = std::complex<double>;

/// A point of the extended complex plane. Infinity is a distinct tag, never
/// encoded as a large float, so arithmetic on finite points stays exact.
class ComplexPoint {
public:
    ComplexPoint() : value_(0.0, 0.0), infinite_(false) {}
    ComplexPoint(Complex v) : value_(v), infinite_(false) {}
    ComplexPoint(double re, double im) : value_(re, im), infinite_(false) {}

    static ComplexPoint infinity() {
        ComplexPoint p;
        p.infinite_ = true;
        return p;
    }

    bool is_infinity() const { return infinite_; }

    /// Finite value; meaningless (zero) when is_infinity().
    Complex value() const { return value_; }

    double modulus() const {
        return infinite_ ? std::numeric_limits<double>::infinity() : std::abs(value_);
    }

    friend bool operator==(const ComplexPoint& a, const ComplexPoint& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ && b.infinite_;
        return a.value_ == b.value_;
    }

    friend std::ostream& operator<<(std::ostream& os, const ComplexPoint& p) {
        if (p.infinite_) return os << "inf";
        return os << p.value_;
    }

private:
    Complex value_;
    bool infinite_;
};

/// Chordal metric on the Riemann sphere (diameter 2).
inline double chordal_distance(const ComplexPoint& a, const ComplexPoint& b) {
    if (a.is_infinity() && b.is_infinity()) return 0.0;
    if (a.is_infinity()) return 2.0 / std::sqrt(1.0 + std::norm(b.value()));
    if (b.is_infinity()) return 2.0 / std::sqrt(1.0 + std::norm(a.value()));
    return 2.0 * std::abs(a.value() - b.value()) /
           std::sqrt((1.0 + std::norm(a.value())) * (1.0 + std::norm(b.value())));
}

/// Distance scaled by 1 + |z|, used for residual checks near infinity.
inline double scaled_distance(const ComplexPoint& a, const ComplexPoint& b) {
    if (a.is_infinity() || b.is_infinity())
        return (a.is_infinity() && b.is_infinity()) ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(a.value() - b.value()) / (1.0 + std::abs(a.value()));
}

} // namespace schottky
