#pragma once

// Finite laminations of the circle: sets of pairwise-unlinked chords, the
// laminar equivalence relations they induce, and convex-hull boundaries.

#include "laminary/circle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace laminary {

using Chord = PointPair;

struct CrossingError : std::runtime_error {
    Chord first, second;
    CrossingError(Chord c1, Chord c2)
        : std::runtime_error("crossing chords {" + c1.a.str() + "," + c1.b.str() +
                             "} and {" + c2.a.str() + "," + c2.b.str() + "}"),
          first(std::move(c1)),
          second(std::move(c2)) {}
};

class Lamination {
public:
    Lamination() = default;

    const std::vector<Chord>& leaves() const { return leaves_; }
    bool empty() const { return leaves_.empty(); }
    std::size_t size() const { return leaves_.size(); }

    bool contains(const Chord& c) const {
        return std::binary_search(leaves_.begin(), leaves_.end(), c);
    }

    friend bool operator==(const Lamination&, const Lamination&) = default;

    friend Lamination make_lamination(std::vector<Chord> chords);

private:
    std::vector<Chord> leaves_;  // canonically sorted, no duplicates
};

/// Validates pairwise unlinkedness; duplicates collapse silently. Throws
/// CrossingError on the first linked pair found.
inline Lamination make_lamination(std::vector<Chord> chords) {
    std::sort(chords.begin(), chords.end());
    chords.erase(std::unique(chords.begin(), chords.end()), chords.end());
    for (std::size_t i = 0; i < chords.size(); ++i)
        for (std::size_t j = i + 1; j < chords.size(); ++j)
            if (linked(chords[i], chords[j]) == LinkResult::Linked)
                throw CrossingError(chords[i], chords[j]);
    Lamination lam;
    lam.leaves_ = std::move(chords);
    return lam;
}

inline Lamination lamination_union(const Lamination& x, const Lamination& y) {
    std::vector<Chord> all = x.leaves();
    all.insert(all.end(), y.leaves().begin(), y.leaves().end());
    return make_lamination(std::move(all));
}

/// Sides of the ideal polygon spanned by K: chords between cyclically
/// consecutive points. Two points give one chord, fewer give nothing.
inline Lamination boundary_hull(const std::set<CirclePoint>& points) {
    std::vector<CirclePoint> sorted(points.begin(), points.end());
    std::vector<Chord> chords;
    if (sorted.size() == 2) {
        chords.emplace_back(sorted[0], sorted[1]);
    } else if (sorted.size() >= 3) {
        for (std::size_t i = 0; i < sorted.size(); ++i)
            chords.emplace_back(sorted[i], sorted[(i + 1) % sorted.size()]);
    }
    return make_lamination(std::move(chords));
}

struct NotLaminarError : std::runtime_error {
    std::size_t class1, class2;
    NotLaminarError(std::size_t i, std::size_t j)
        : std::runtime_error("equivalence classes " + std::to_string(i) + " and " +
                             std::to_string(j) + " are linked"),
          class1(i),
          class2(j) {}
};

/// Equivalence relation on circle points with pairwise-unlinked classes.
/// Points not listed in any class are implicit singletons.
class LaminarRelation {
public:
    LaminarRelation() = default;

    explicit LaminarRelation(std::vector<std::set<CirclePoint>> classes)
        : classes_(std::move(classes)) {
        std::set<CirclePoint> seen;
        for (const auto& cls : classes_) {
            if (cls.size() < 2)
                throw std::invalid_argument("laminar relation class needs >= 2 points");
            for (const auto& p : cls)
                if (!seen.insert(p).second)
                    throw std::invalid_argument("point " + p.str() +
                                                " appears in two classes");
        }
        for (std::size_t i = 0; i < classes_.size(); ++i)
            for (std::size_t j = i + 1; j < classes_.size(); ++j)
                if (classes_linked(classes_[i], classes_[j])) throw NotLaminarError(i, j);
    }

    const std::vector<std::set<CirclePoint>>& classes() const { return classes_; }

private:
    static bool classes_linked(const std::set<CirclePoint>& x,
                               const std::set<CirclePoint>& y) {
        for (auto ix = x.begin(); ix != x.end(); ++ix)
            for (auto jx = std::next(ix); jx != x.end(); ++jx) {
                PointPair px(*ix, *jx);
                for (auto iy = y.begin(); iy != y.end(); ++iy)
                    for (auto jy = std::next(iy); jy != y.end(); ++jy) {
                        if (x.count(*iy) || x.count(*jy)) continue;
                        if (linked(px, PointPair(*iy, *jy)) == LinkResult::Linked)
                            return true;
                    }
            }
        return false;
    }

    std::vector<std::set<CirclePoint>> classes_;
};

/// Union over classes of the boundary hull of each class. Valid by the
/// unlinkedness of the classes.
inline Lamination relation_to_lamination(const LaminarRelation& rel) {
    std::vector<Chord> chords;
    for (const auto& cls : rel.classes()) {
        const Lamination hull = boundary_hull(cls);
        for (const auto& c : hull.leaves()) chords.push_back(c);
    }
    return make_lamination(std::move(chords));
}

/// Connected components of the endpoint-sharing graph: the smallest relation
/// collapsing every leaf, which for finite data is already Hausdorff.
inline LaminarRelation lamination_to_relation(const Lamination& lam) {
    std::map<CirclePoint, CirclePoint> parent;
    auto find = [&](CirclePoint p) {
        while (parent.at(p) != p) p = parent.at(p);
        return p;
    };
    for (const auto& c : lam.leaves()) {
        parent.try_emplace(c.a, c.a);
        parent.try_emplace(c.b, c.b);
        CirclePoint ra = find(c.a), rb = find(c.b);
        if (ra != rb) parent.at(ra) = rb;
    }
    std::map<CirclePoint, std::set<CirclePoint>> groups;
    for (const auto& [p, _] : parent) groups[find(p)].insert(p);
    std::vector<std::set<CirclePoint>> classes;
    for (auto& [_, cls] : groups)
        if (cls.size() >= 2) classes.push_back(std::move(cls));
    return LaminarRelation(std::move(classes));
}

}  // namespace laminary
