#pragma once

// Randomized two-sided scenarios for stress testing: an hourglass-shaped
// leaf space (negative cluster below, positive cluster above, one middle
// leaf) with random marker heights and random launch marks. The shape
// guarantees a two-sided branching leaf space whose laminations are nonempty
// in both directions, so every generated case must pass the full pipeline.

#include "laminary/invariant_lams.hpp"
#include "laminary/universal_circle.hpp"

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace laminary {

namespace fuzzdetail {

/// Distinct rationals in [0,1), sorted, with denominators up to 64.
inline std::vector<Rational> distinct_heights(std::mt19937_64& rng, std::size_t count) {
    std::set<Rational> vals;
    std::uniform_int_distribution<int> den_pick(0, 3);
    while (vals.size() < count) {
        const long den = 8L << den_pick(rng);
        std::uniform_int_distribution<long> num_pick(0, den - 1);
        vals.insert(Rational(num_pick(rng), den));
    }
    return {vals.begin(), vals.end()};
}

/// A point strictly between lo and hi.
inline Rational inside(std::mt19937_64& rng, const Rational& lo, const Rational& hi) {
    static const Rational ts[] = {Rational(1, 4), Rational(1, 3), Rational(1, 2),
                                  Rational(2, 3), Rational(3, 4)};
    std::uniform_int_distribution<int> pick(0, 4);
    return lo + (hi - lo) * ts[pick(rng)];
}

}  // namespace fuzzdetail

/// Random hourglass: chain b < m < p with the partner bn of b below m and
/// the partner pq of p above m. Chain markers sit at the low heights, side
/// markers at the high ones, so the two marker blocks never interleave; at
/// least one launch mark on m strictly inside a chain gap keeps both
/// laminations nonempty.
inline Scenario random_two_sided_scenario(std::mt19937_64& rng) {
    Scenario s;
    s.space = LeafSpace({"b", "bn", "m", "p", "pq"},
                        {{"b", "m", "p"}, {"bn", "m"}, {"m", "pq"}},
                        {{"p", "pq", Side::Positive}, {"b", "bn", Side::Negative}});
    std::uniform_int_distribution<int> coin(0, 1);
    const std::size_t chain = 2 + coin(rng);
    const std::size_t side = 2 + coin(rng);
    auto heights = fuzzdetail::distinct_heights(rng, chain + side);

    for (std::size_t i = 0; i < chain; ++i) {
        const std::string idx = std::to_string(i);
        const CirclePoint h{heights[i]};
        s.circles["b"].marks.emplace("g" + idx, h);
        s.circles["m"].marks.emplace("ma" + idx, h);
        s.circles["p"].marks.emplace("a" + idx, h);
        s.markers.push_back({{"b", "m", "p"}, {"g" + idx, "ma" + idx, "a" + idx}});
    }
    for (std::size_t j = 0; j < side; ++j) {
        const std::string idx = std::to_string(j);
        const CirclePoint h{heights[chain + j]};
        s.circles["bn"].marks.emplace("h" + idx, h);
        s.circles["m"].marks.emplace("mb" + idx, h);
        s.circles["pq"].marks.emplace("c" + idx, h);
        s.markers.push_back({{"bn", "m"}, {"h" + idx, "mb" + idx}});
        s.markers.push_back({{"m", "pq"}, {"mb" + idx, "c" + idx}});
    }

    // one launch per chosen chain gap, the first gap always included
    std::size_t launches = 1 + (chain > 2 ? coin(rng) : 0);
    for (std::size_t l = 0; l < launches; ++l)
        s.circles["m"].marks.emplace(
            "w" + std::to_string(l),
            CirclePoint(fuzzdetail::inside(rng, heights[l], heights[l + 1])));
    // optional extra launches on bn (inside a side gap) and p (above the chain)
    if (coin(rng))
        s.circles["bn"].marks.emplace(
            "k", CirclePoint(fuzzdetail::inside(rng, heights[chain], heights[chain + 1])));
    if (coin(rng))
        s.circles["p"].marks.emplace(
            "x", CirclePoint(fuzzdetail::inside(rng, heights[chain - 1], heights[chain])));
    return s;
}

struct FuzzCaseReport {
    std::uint64_t seed = 0;
    bool valid = false;
    bool axioms_ok = false;
    bool minimal = false;
    bool nonempty_plus = false;
    bool nonempty_minus = false;
    bool zero_violations = false;
    std::string problem;

    bool ok() const {
        return valid && axioms_ok && minimal && nonempty_plus && nonempty_minus &&
               zero_violations;
    }
};

/// Full pipeline on one random case: validity, axioms, minimality, nonempty
/// laminations of both signs, and no trivial-map violations on any leaf pair.
inline FuzzCaseReport run_fuzz_case(std::uint64_t seed) {
    FuzzCaseReport rep;
    rep.seed = seed;
    std::mt19937_64 rng(seed);
    try {
        const Scenario s = random_two_sided_scenario(rng);
        rep.valid = validate_scenario(s).ok;
        if (!rep.valid) {
            rep.problem = "scenario invalid";
            return rep;
        }
        const UniversalCircleResult r = build_universal_circle(s);
        rep.axioms_ok = verify_axioms(r, s).all_ok();
        rep.minimal = is_minimal(r);
        const UnivLaminationPair lams = univ_laminations(r);
        rep.nonempty_plus = !lams.plus.empty();
        rep.nonempty_minus = !lams.minus.empty();
        rep.zero_violations = true;
        for (const auto& lam : r.space.leaves())
            for (const auto& mu : r.space.leaves())
                if (lam != mu && !check_trivial_map(r, lam, mu).ok) {
                    rep.zero_violations = false;
                    rep.problem = "trivial-map violation on (" + lam + "," + mu + ")";
                }
        if (!rep.ok() && rep.problem.empty()) rep.problem = "pipeline check failed";
    } catch (const std::exception& e) {
        rep.problem = e.what();
    }
    return rep;
}

}  // namespace laminary
