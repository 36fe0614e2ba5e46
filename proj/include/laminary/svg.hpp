#pragma once

// SVG rendering of laminations as Poincaré-disk geodesics. Output is byte
// deterministic: fixed 9-decimal coordinates, chords emitted in the sorted
// order of their endpoint pairs.

#include "laminary/hyperbolic.hpp"
#include "laminary/lamination.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace laminary {

struct RenderOptions {
    int size_px = 512;  // width and height; at least 64
    std::string plus_color = "#cc2222";
    std::string minus_color = "#2244cc";
    std::string circle_color = "#000000";
};

namespace svgdetail {

inline std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.9f", v + 0.0);  // normalize -0
    return buf;
}

struct DiskXY {
    double x, y;
};

/// Disk coordinates of a boundary point; the y axis is flipped so the circle
/// is traversed counterclockwise on screen as the turn parameter grows.
inline DiskXY boundary_xy(const CirclePoint& p) {
    const double a = detail::angle_of(p);
    return {std::cos(a), -std::sin(a)};
}

inline std::string chord_path(const Chord& c) {
    const DiskGeodesic g = chord_to_geodesic(c);
    const DiskXY u = boundary_xy(c.a), v = boundary_xy(c.b);
    if (g.is_diameter)
        return "M " + num(u.x) + " " + num(u.y) + " L " + num(v.x) + " " + num(v.y);
    // minor arc of the orthogonal circle; the sweep flag follows the sign of
    // the cross product around the (y-flipped) center
    const double cy = -g.cy;
    const double cross =
        (u.x - g.cx) * (v.y - cy) - (u.y - cy) * (v.x - g.cx);
    const char* sweep = cross > 0 ? "1" : "0";
    return "M " + num(u.x) + " " + num(u.y) + " A " + num(g.radius) + " " +
           num(g.radius) + " 0 0 " + sweep + " " + num(v.x) + " " + num(v.y);
}

}  // namespace svgdetail

/// Renders the two laminations on one disk: boundary circle in black, plus
/// chords in red, minus chords in blue.
inline std::string render_svg(const Lamination& plus, const Lamination& minus,
                              const RenderOptions& opt = {}) {
    const int size = std::max(opt.size_px, 64);
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           std::to_string(size) + "\" height=\"" + std::to_string(size) +
           "\" viewBox=\"-1.100000000 -1.100000000 2.200000000 2.200000000\">\n";
    out += "  <circle cx=\"0.000000000\" cy=\"0.000000000\" r=\"1.000000000\" fill=\"none\" stroke=\"" +
           opt.circle_color + "\" stroke-width=\"0.012000000\"/>\n";
    struct Item {
        Chord chord;
        const std::string* color;
    };
    std::vector<Item> items;
    for (const auto& c : plus.leaves()) items.push_back({c, &opt.plus_color});
    for (const auto& c : minus.leaves()) items.push_back({c, &opt.minus_color});
    std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
        if (x.chord.a != y.chord.a) return x.chord.a < y.chord.a;
        if (x.chord.b != y.chord.b) return x.chord.b < y.chord.b;
        return *x.color < *y.color;
    });
    for (const auto& it : items)
        out += "  <path d=\"" + svgdetail::chord_path(it.chord) + "\" fill=\"none\" stroke=\"" +
               *it.color + "\" stroke-width=\"0.008000000\"/>\n";
    out += "</svg>\n";
    return out;
}

}  // namespace laminary
