#pragma once

// Poincaré-disk realization of chords as geodesics. The only module where
// floating point appears; every combinatorial decision stays with the exact
// predicates in circle.hpp.

#include "laminary/circle.hpp"
#include "laminary/lamination.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

namespace laminary {

struct ExactOrtho {
    Rational cx, cy, r2;  // |c|^2 = r2 + 1 holds exactly
};

/// A geodesic of the disk: a diameter for antipodal endpoints, otherwise an
/// arc of the circle through both boundary points orthogonal to the unit
/// circle. Exact center/radius^2 is available when both endpoints sit at
/// quarter turns (the rational points of the unit circle at rational turns).
struct DiskGeodesic {
    PointPair endpoints;
    bool is_diameter = false;
    double cx = 0, cy = 0, radius = 0;  // unused for diameters
    std::optional<ExactOrtho> exact;
};

namespace detail {

inline double angle_of(const CirclePoint& p) {
    return 2.0 * std::numbers::pi * static_cast<double>(p.turn());
}

/// (cos, sin) of 2*pi*t as exact rationals, available iff t is a multiple
/// of 1/4.
inline std::optional<std::pair<Rational, Rational>> exact_unit_vector(const CirclePoint& p) {
    const Rational t4 = p.turn() * 4;
    if (denominator(t4) != 1) return std::nullopt;
    Integer q = numerator(t4) % 4;
    switch (static_cast<int>(q)) {
        case 0: return std::pair<Rational, Rational>{1, 0};
        case 1: return std::pair<Rational, Rational>{0, 1};
        case 2: return std::pair<Rational, Rational>{-1, 0};
        default: return std::pair<Rational, Rational>{0, -1};
    }
}

}  // namespace detail

inline DiskGeodesic chord_to_geodesic(const Chord& c) {
    DiskGeodesic g{c};
    if (frac(c.b.turn() - c.a.turn()) == Rational(1, 2)) {
        g.is_diameter = true;
        return g;
    }
    const double a1 = detail::angle_of(c.a), a2 = detail::angle_of(c.b);
    const double ux = std::cos(a1), uy = std::sin(a1);
    const double vx = std::cos(a2), vy = std::sin(a2);
    const double d = 1.0 + ux * vx + uy * vy;
    g.cx = (ux + vx) / d;
    g.cy = (uy + vy) / d;
    g.radius = std::hypot(g.cx - ux, g.cy - uy);
    auto eu = detail::exact_unit_vector(c.a);
    auto ev = detail::exact_unit_vector(c.b);
    if (eu && ev) {
        Rational den = 1 + eu->first * ev->first + eu->second * ev->second;
        Rational ecx = (eu->first + ev->first) / den;
        Rational ecy = (eu->second + ev->second) / den;
        Rational dx = ecx - eu->first, dy = ecy - eu->second;
        g.exact = ExactOrtho{ecx, ecy, dx * dx + dy * dy};
    }
    return g;
}

struct TooFewPointsError : std::runtime_error {
    TooFewPointsError() : std::runtime_error("ideal polygon needs at least 3 points") {}
};

/// Sides between cyclically consecutive vertices, counterclockwise.
inline std::vector<DiskGeodesic> ideal_polygon(const std::set<CirclePoint>& points) {
    if (points.size() < 3) throw TooFewPointsError();
    std::vector<CirclePoint> sorted(points.begin(), points.end());
    std::vector<DiskGeodesic> sides;
    for (std::size_t i = 0; i < sorted.size(); ++i)
        sides.push_back(chord_to_geodesic(Chord(sorted[i], sorted[(i + 1) % sorted.size()])));
    return sides;
}

}  // namespace laminary
