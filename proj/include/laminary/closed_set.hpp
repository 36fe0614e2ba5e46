#pragma once

// Finite unions of closed arcs and points on the circle, with the complement
// and unlinkedness queries that core computations need.

#include "laminary/circle.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace laminary {

/// A closed subset of the circle given as disjoint closed arcs and isolated
/// points, kept sorted by start with touching pieces merged. `full()` is the
/// whole circle.
class ClosedCircleSet {
public:
    ClosedCircleSet() = default;

    static ClosedCircleSet whole_circle() {
        ClosedCircleSet s;
        s.full_ = true;
        return s;
    }

    static ClosedCircleSet from_arcs(std::vector<Arc> arcs) {
        ClosedCircleSet s;
        s.add(std::move(arcs));
        return s;
    }

    void add(const Arc& arc) { add(std::vector<Arc>{arc}); }

    void add(std::vector<Arc> arcs) {
        if (full_) return;
        for (auto& a : arcs) {
            if (a.start == a.end && !a.is_point()) {
                // closed arc wrapping all the way around
                full_ = true;
                pieces_.clear();
                return;
            }
            pieces_.push_back(std::move(a));
        }
        normalize();
    }

    void add(const ClosedCircleSet& other) {
        if (other.full_) {
            full_ = true;
            pieces_.clear();
            return;
        }
        add(other.pieces_);
    }

    bool full() const { return full_; }
    bool empty() const { return !full_ && pieces_.empty(); }
    const std::vector<Arc>& pieces() const { return pieces_; }

    bool contains(const CirclePoint& p) const {
        if (full_) return true;
        for (const auto& a : pieces_)
            if (arc_contains(a, p)) return true;
        return false;
    }

    bool intersects(const ClosedCircleSet& other) const {
        if (empty() || other.empty()) return false;
        if (full_ || other.full_) return true;
        for (const auto& a : pieces_)
            for (const auto& b : other.pieces_)
                if (arcs_meet(a, b)) return true;
        return false;
    }

    /// Maximal open arcs of the complement, in cyclic order. Empty when the
    /// set is the whole circle; the complement of the empty set is reported
    /// as a single full-circle arc anchored at 0.
    std::vector<Arc> complement_arcs() const {
        if (full_) return {};
        if (pieces_.empty())
            return {Arc{CirclePoint(Rational(0)), CirclePoint(Rational(0)), false, false}};
        std::vector<Arc> out;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            const Arc& cur = pieces_[i];
            const Arc& nxt = pieces_[(i + 1) % pieces_.size()];
            out.push_back(Arc::open(cur.end, nxt.start));
        }
        return out;
    }

    /// Index of the single complement arc of `gaps` whose closure contains
    /// this whole set, or nullopt if no such arc exists.
    std::optional<std::size_t> fits_in_complement_arc_of(const ClosedCircleSet& other) const {
        auto gaps = other.complement_arcs();
        for (std::size_t g = 0; g < gaps.size(); ++g) {
            Arc closure = Arc::closed(gaps[g].start, gaps[g].end);
            if (gaps[g].start == gaps[g].end && !gaps[g].is_point()) {
                // complement of a single point or of the empty set
                if (other.empty()) return g;
                closure = Arc{gaps[g].start, gaps[g].end, true, true};
                // closure of a full-minus-point arc is the whole circle
                return g;
            }
            bool ok = true;
            for (const auto& p : pieces_) {
                if (!arc_within(p, closure)) {
                    ok = false;
                    break;
                }
            }
            if (ok && !full_) return g;
        }
        return std::nullopt;
    }

    /// Expand every piece by eps on both sides.
    ClosedCircleSet thickened(const Rational& eps) const {
        if (full_ || empty()) return *this;
        if (Rational(2) * eps >= 1) return whole_circle();
        std::vector<Arc> grown;
        for (const auto& a : pieces_) {
            Rational len = a.end.ccw_from(a.start);
            if (a.is_point()) len = 0;
            if (len + 2 * eps >= 1) return whole_circle();
            grown.push_back(Arc::closed(rotate(a.start, -eps), rotate(a.end, eps)));
        }
        return from_arcs(std::move(grown));
    }

    friend bool operator==(const ClosedCircleSet&, const ClosedCircleSet&) = default;

private:
    static bool arcs_meet(const Arc& a, const Arc& b) {
        return arc_contains(a, b.start) || arc_contains(a, b.end) ||
               arc_contains(b, a.start) || arc_contains(b, a.end);
    }

    // p fully inside the closed arc `host` (endpoints allowed).
    static bool arc_within(const Arc& p, const Arc& host) {
        if (!arc_contains(host, p.start) || !arc_contains(host, p.end)) return false;
        if (p.is_point()) return true;
        // both endpoints inside: the arc is inside iff it does not overshoot
        return p.end.ccw_from(host.start) >= p.start.ccw_from(host.start);
    }

    void normalize() {
        if (pieces_.empty()) return;
        // lifted intervals [a, a+len] with a in [0,1)
        struct Iv {
            Rational a, b;
        };
        std::vector<Iv> ivs;
        for (const auto& p : pieces_) {
            Rational len = p.is_point() ? Rational(0) : p.end.ccw_from(p.start);
            ivs.push_back({p.start.turn(), p.start.turn() + len});
        }
        std::sort(ivs.begin(), ivs.end(),
                  [](const Iv& x, const Iv& y) { return x.a < y.a || (x.a == y.a && x.b < y.b); });
        std::vector<Iv> merged;
        for (const auto& iv : ivs) {
            if (!merged.empty() && iv.a <= merged.back().b)
                merged.back().b = std::max(merged.back().b, iv.b);
            else
                merged.push_back(iv);
        }
        // wraparound: does the last interval reach the first one (shifted by 1)?
        while (merged.size() > 1 && merged.back().b >= merged.front().a + 1) {
            merged.front().a = merged.back().a - 1;
            merged.front().b = std::max(merged.front().b, Rational(merged.back().b - 1));
            merged.pop_back();
        }
        if (merged.size() == 1 && merged.front().b - merged.front().a >= 1) {
            full_ = true;
            pieces_.clear();
            return;
        }
        pieces_.clear();
        for (const auto& iv : merged) {
            CirclePoint s{iv.a}, e{iv.b};
            pieces_.push_back(iv.a == iv.b ? Arc::point(s) : Arc::closed(s, e));
        }
        // canonical order: sorted by start turn
        std::sort(pieces_.begin(), pieces_.end(),
                  [](const Arc& x, const Arc& y) { return x.start < y.start; });
    }

    bool full_ = false;
    std::vector<Arc> pieces_;
};

/// No pair of points drawn from a links a pair drawn from b.
inline bool unlinked_sets(const ClosedCircleSet& a, const ClosedCircleSet& b) {
    if (a.empty() || b.empty()) return true;
    return a.fits_in_complement_arc_of(b).has_value() ||
           b.fits_in_complement_arc_of(a).has_value();
}

}  // namespace laminary
