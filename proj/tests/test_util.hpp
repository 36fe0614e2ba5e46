#pragma once

// Shared helpers for the test suites: seeded random rationals, points,
// chords, laminations and monotone maps.

#include "laminary/circle.hpp"
#include "laminary/lamination.hpp"
#include "laminary/monotone.hpp"

#include <random>
#include <set>
#include <vector>

namespace testutil {

using namespace laminary;

inline Rational random_rational(std::mt19937& rng, int max_den = 64) {
    std::uniform_int_distribution<int> den_dist(1, max_den);
    int den = den_dist(rng);
    std::uniform_int_distribution<int> num_dist(0, den - 1);
    return Rational(num_dist(rng), den);
}

inline CirclePoint random_point(std::mt19937& rng, int max_den = 64) {
    return CirclePoint(random_rational(rng, max_den));
}

inline std::set<CirclePoint> random_point_set(std::mt19937& rng, std::size_t count,
                                              int max_den = 64) {
    std::set<CirclePoint> pts;
    while (pts.size() < count) pts.insert(random_point(rng, max_den));
    return pts;
}

/// Random lamination with at most max_leaves leaves, built by rejection.
inline Lamination random_lamination(std::mt19937& rng, std::size_t max_leaves) {
    std::vector<Chord> chords;
    std::uniform_int_distribution<std::size_t> count_dist(0, max_leaves);
    std::size_t want = count_dist(rng);
    int attempts = 0;
    while (chords.size() < want && attempts++ < 400) {
        CirclePoint a = random_point(rng), b = random_point(rng);
        if (a == b) continue;
        Chord c(a, b);
        bool ok = true;
        for (const auto& other : chords)
            if (linked(c, other) == LinkResult::Linked) ok = false;
        if (ok) chords.push_back(c);
    }
    return make_lamination(std::move(chords));
}

/// Random degree-one monotone map with at most max_gaps gaps: alternating
/// strict and constant segments between cyclically sorted breakpoints.
inline MonotoneMap random_monotone(std::mt19937& rng, std::size_t max_gaps) {
    std::uniform_int_distribution<std::size_t> gap_dist(0, max_gaps);
    std::size_t gaps = gap_dist(rng);
    if (gaps == 0) {
        auto xs = random_point_set(rng, 2, 64);
        auto ys = random_point_set(rng, 2, 64);
        std::vector<CirclePoint> xv(xs.begin(), xs.end()), yv(ys.begin(), ys.end());
        return make_monotone({{xv[0], yv[0]}, {xv[1], yv[1]}});
    }
    if (gaps == 1) {
        auto xs = random_point_set(rng, 3, 64);
        auto ys = random_point_set(rng, 2, 64);
        std::vector<CirclePoint> xv(xs.begin(), xs.end()), yv(ys.begin(), ys.end());
        return make_monotone({{xv[0], yv[0]}, {xv[1], yv[1]}, {xv[2], yv[1]}});
    }
    auto xs = random_point_set(rng, 2 * gaps, 64);
    auto ys = random_point_set(rng, gaps, 64);
    std::vector<CirclePoint> xv(xs.begin(), xs.end()), yv(ys.begin(), ys.end());
    std::vector<MonotoneMap::Breakpoint> bps;
    for (std::size_t k = 0; k < gaps; ++k) {
        bps.push_back({xv[2 * k], yv[k]});
        bps.push_back({xv[2 * k + 1], yv[(k + 1) % gaps]});
    }
    return make_monotone(std::move(bps));
}

inline CirclePoint pt(int num, int den = 1) { return CirclePoint(Rational(num, den)); }

inline Chord chord(int an, int ad, int bn, int bd) {
    return Chord(pt(an, ad), pt(bn, bd));
}

}  // namespace testutil
