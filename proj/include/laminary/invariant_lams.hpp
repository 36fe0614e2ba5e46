#pragma once

// Invariant laminations of the universal circle: one-sided cores, their
// boundary hulls, the two-sided union, per-leaf geodesic pushforwards, fan
// detection, and the genuine-vs-fan classification flag.

#include "laminary/closed_set.hpp"
#include "laminary/lamination.hpp"
#include "laminary/leafspace.hpp"
#include "laminary/monotone.hpp"
#include "laminary/universal_circle.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace laminary {

struct EmptySideError : std::runtime_error {
    EmptySideError(const std::string& leaf, Side sign)
        : std::runtime_error("no leaf lies on the " +
                             std::string(sign == Side::Positive ? "positive" : "negative") +
                             " side of " + leaf) {}
};

struct NotMinimalError : std::runtime_error {
    NotMinimalError() : std::runtime_error("universal circle is not minimal") {}
};

struct SideCore {
    std::string leaf;
    Side sign;
    // union of core(phi_mu) over the leaves mu on the given side; already
    // closed, so no closure step is needed
    ClosedCircleSet arcs;
};

/// Union of core(phi_mu) over the leaves mu on the given side of `leaf`.
inline SideCore side_core(const UniversalCircleResult& r, const std::string& leaf,
                          Side sign) {
    SideCore out{leaf, sign, {}};
    bool any = false;
    for (const auto& mu : r.space.leaves()) {
        if (mu == leaf) continue;
        if (r.space.positive_side(leaf, mu) != sign) continue;
        any = true;
        out.arcs.add(r.phi.at(mu).core());
    }
    if (!any) throw EmptySideError(leaf, sign);
    return out;
}

/// Boundary of the convex hull of a closed set: one chord across each
/// complement gap. The whole circle and single points have no boundary.
inline Lamination hull_boundary(const ClosedCircleSet& set) {
    std::vector<Chord> chords;
    for (const Arc& gap : set.complement_arcs())
        if (gap.start != gap.end) chords.emplace_back(gap.start, gap.end);
    return make_lamination(std::move(chords));
}

/// Sides of the ideal hull spanned by the side core.
inline Lamination lambda_side(const UniversalCircleResult& r, const std::string& leaf,
                              Side sign) {
    return hull_boundary(side_core(r, leaf, sign).arcs);
}

struct UnivLaminationPair {
    Lamination plus, minus;
};

/// True when the leaf space forces a nonempty lamination of the given sign:
/// some pair of incomparable leaves branching in that direction where one of
/// them still has further leaves beyond it on that side. Its one-sided core
/// then sits inside a single gap of the other leaf, so its hull has a side.
inline bool branching_witness(const LeafSpace& space, Side sign) {
    const Side opp = sign == Side::Positive ? Side::Negative : Side::Positive;
    const auto& leaves = space.leaves();
    for (const auto& a : leaves)
        for (const auto& b : leaves) {
            if (a == b || space.comparable(a, b)) continue;
            if (space.positive_side(a, b) != opp || space.positive_side(b, a) != opp)
                continue;
            for (const auto& nu : leaves)
                if (nu != a && space.positive_side(a, nu) == sign) return true;
        }
    return false;
}

/// Union over all leaves of lambda_side for each sign. Requires a minimal
/// circle; a crossing inside the union is a theorem violation and propagates
/// as CrossingError. Nonemptiness is asserted when the branching pattern
/// forces it (see branching_witness).
inline UnivLaminationPair univ_laminations(const UniversalCircleResult& r) {
    if (!is_minimal(r)) throw NotMinimalError();
    UnivLaminationPair out;
    for (Side sign : {Side::Positive, Side::Negative}) {
        std::vector<Chord> chords;
        for (const auto& leaf : r.space.leaves()) {
            try {
                const Lamination l = lambda_side(r, leaf, sign);
                chords.insert(chords.end(), l.leaves().begin(), l.leaves().end());
            } catch (const EmptySideError&) {
                // extremal leaves have nothing on one side
            }
        }
        Lamination& target = sign == Side::Positive ? out.plus : out.minus;
        target = make_lamination(std::move(chords));
        if (target.empty() && branching_witness(r.space, sign))
            throw std::logic_error(
                std::string(sign == Side::Positive ? "positive" : "negative") +
                " branching forces a nonempty lamination but none was produced");
    }
    return out;
}

struct TrivialMapReport {
    std::string lam, mu;
    bool applicable;  // mu < lam, where a nontrivial image is allowed
    Lamination image;
    bool ok;
};

/// The pushforward of the positive-side hull of `lam` under phi_mu must be
/// trivial (every chord degenerates) unless mu < lam.
inline TrivialMapReport check_trivial_map(const UniversalCircleResult& r,
                                          const std::string& lam, const std::string& mu) {
    TrivialMapReport rep{lam, mu, r.space.less(mu, lam), {}, true};
    Lamination side;
    try {
        side = lambda_side(r, lam, Side::Positive);
    } catch (const EmptySideError&) {
        return rep;
    }
    rep.image = pushforward(r.phi.at(mu), side);
    rep.ok = rep.applicable || rep.image.empty();
    return rep;
}

/// The universal lamination of the given sign, pushed onto the boundary
/// circle of one leaf.
inline Lamination leaf_lamination(const UniversalCircleResult& r,
                                  const UnivLaminationPair& lams,
                                  const std::string& leaf, Side sign) {
    return pushforward(r.phi.at(leaf),
                       sign == Side::Positive ? lams.plus : lams.minus);
}

/// A fan: a nonempty lamination whose leaves all share one endpoint.
inline std::optional<CirclePoint> is_fan(const Lamination& lam) {
    if (lam.empty()) return std::nullopt;
    for (const CirclePoint& cand : {lam.leaves()[0].a, lam.leaves()[0].b}) {
        bool all = true;
        for (const auto& c : lam.leaves())
            if (c.a != cand && c.b != cand) all = false;
        if (all) return cand;
    }
    return std::nullopt;
}

enum class Alternative { FanEverywhere, GenuineCandidate, Mixed };

struct LeafClassification {
    std::string leaf;
    Lamination lamination;                // positive pushforward
    std::optional<CirclePoint> fan_center;
};

struct ClassifyReport {
    Alternative verdict;
    std::vector<LeafClassification> detail;
};

/// Fan-everywhere vs genuine-candidate alternative, decided from the
/// positive per-leaf pushforwards. Leaves with an empty pushforward do not
/// vote: extremal leaves of a finite truncation never see the lamination
/// (nothing sits beyond them to cast chords their way), so the dichotomy is
/// judged on the leaves where the lamination is visible.
inline ClassifyReport classify_alternative(const UniversalCircleResult& r,
                                           const UnivLaminationPair& lams) {
    ClassifyReport rep{Alternative::Mixed, {}};
    bool all_fans = true, no_fans = true, any_nonempty = false;
    for (const auto& leaf : r.space.leaves()) {
        LeafClassification lc;
        lc.leaf = leaf;
        lc.lamination = leaf_lamination(r, lams, leaf, Side::Positive);
        lc.fan_center = is_fan(lc.lamination);
        if (!lc.lamination.empty()) {
            any_nonempty = true;
            if (lc.fan_center)
                no_fans = false;
            else
                all_fans = false;
        }
        rep.detail.push_back(std::move(lc));
    }
    if (any_nonempty && all_fans)
        rep.verdict = Alternative::FanEverywhere;
    else if (any_nonempty && no_fans)
        rep.verdict = Alternative::GenuineCandidate;
    else
        rep.verdict = Alternative::Mixed;
    return rep;
}

struct FixedPointReport {
    enum class Status { NoGenerators, Consistent, Inconsistent };
    Status status;
    std::vector<std::size_t> fixed_sections;
    Branching branching;
};

/// A section fixed by every generator is only consistent with the theory
/// when the leaf space does not branch in both directions.
inline FixedPointReport fixed_point_check(const UniversalCircleResult& r) {
    FixedPointReport rep;
    rep.branching = r.space.classify_branching();
    if (r.generator_actions.empty()) {
        rep.status = FixedPointReport::Status::NoGenerators;
        return rep;
    }
    for (std::size_t i = 0; i < r.size(); ++i) {
        bool fixed = true;
        for (const auto& [g, perm] : r.generator_actions) {
            (void)g;
            if (perm[i] != i) fixed = false;
        }
        if (fixed) rep.fixed_sections.push_back(i);
    }
    rep.status = (!rep.fixed_sections.empty() && rep.branching == Branching::TwoSided)
                     ? FixedPointReport::Status::Inconsistent
                     : FixedPointReport::Status::Consistent;
    return rep;
}

}  // namespace laminary
