#pragma once

// Exact points, arcs and cyclic-order predicates on the circle. Coordinates
// are rational "turns" (1 turn = full circle), so every predicate is decided
// exactly, with no epsilon anywhere.

#include "laminary/rational.hpp"

#include <compare>
#include <utility>

namespace laminary {

class CirclePoint {
public:
    CirclePoint() = default;
    explicit CirclePoint(Rational turn) : turn_(frac(std::move(turn))) {}

    static CirclePoint from_string(const std::string& s) {
        return CirclePoint(parse_rational(s));
    }

    const Rational& turn() const { return turn_; }
    std::string str() const { return format_rational(turn_); }

    friend bool operator==(const CirclePoint& a, const CirclePoint& b) {
        return a.turn_ == b.turn_;
    }
    // Linear order by turn coordinate; used for canonical storage only.
    friend bool operator<(const CirclePoint& a, const CirclePoint& b) {
        return a.turn_ < b.turn_;
    }
    friend bool operator!=(const CirclePoint& a, const CirclePoint& b) { return !(a == b); }
    friend bool operator<=(const CirclePoint& a, const CirclePoint& b) { return !(b < a); }
    friend bool operator>(const CirclePoint& a, const CirclePoint& b) { return b < a; }
    friend bool operator>=(const CirclePoint& a, const CirclePoint& b) { return !(a < b); }

    /// Counterclockwise angular offset from `from` to this point, in [0,1).
    Rational ccw_from(const CirclePoint& from) const {
        return frac(turn_ - from.turn_);
    }

private:
    Rational turn_;  // in [0,1), lowest terms (maintained by cpp_rational)
};

inline CirclePoint rotate(const CirclePoint& p, const Rational& by) {
    return CirclePoint(p.turn() + by);
}

/// +1 if (a,b,c) counterclockwise, -1 if clockwise, 0 if any two coincide.
inline int cyclic_orient(const CirclePoint& a, const CirclePoint& b, const CirclePoint& c) {
    if (a == b || b == c || a == c) return 0;
    return b.ccw_from(a) < c.ccw_from(a) ? +1 : -1;
}

struct PointPair {
    CirclePoint a, b;  // canonical: a < b by turn

    PointPair(CirclePoint x, CirclePoint y) {
        if (x == y) throw std::invalid_argument("degenerate point pair at " + x.str());
        if (y < x) std::swap(x, y);
        a = std::move(x);
        b = std::move(y);
    }

    friend bool operator==(const PointPair& p, const PointPair& q) {
        return p.a == q.a && p.b == q.b;
    }
    friend bool operator<(const PointPair& p, const PointPair& q) {
        if (p.a != q.a) return p.a < q.a;
        return p.b < q.b;
    }

    bool contains(const CirclePoint& p) const { return p == a || p == b; }
};

enum class LinkResult { Linked, Unlinked, SharedEndpoint };

/// Two pairs link iff each separates the other; pairs that intersect as sets
/// are reported separately (geodesics sharing an ideal endpoint are disjoint).
inline LinkResult linked(const PointPair& p, const PointPair& q) {
    if (p.contains(q.a) || p.contains(q.b)) return LinkResult::SharedEndpoint;
    // q.a inside the open arc (p.a, p.b) iff its ccw offset from p.a is
    // strictly between 0 and the offset of p.b.
    const Rational span = p.b.ccw_from(p.a);
    const bool a_in = q.a.ccw_from(p.a) < span;
    const bool b_in = q.b.ccw_from(p.a) < span;
    return (a_in != b_in) ? LinkResult::Linked : LinkResult::Unlinked;
}

/// Arc traversed counterclockwise from start to end, each endpoint tagged
/// open or closed. start == end with both ends closed denotes a single point.
struct Arc {
    CirclePoint start, end;
    bool start_closed = true;
    bool end_closed = true;

    static Arc open(CirclePoint s, CirclePoint e) {
        return Arc{std::move(s), std::move(e), false, false};
    }
    static Arc closed(CirclePoint s, CirclePoint e) {
        return Arc{std::move(s), std::move(e), true, true};
    }
    static Arc point(CirclePoint p) { return closed(p, p); }

    bool is_point() const { return start == end && start_closed && end_closed; }

    friend bool operator==(const Arc&, const Arc&) = default;
};

inline bool arc_contains(const Arc& arc, const CirclePoint& p) {
    if (arc.start == arc.end) {
        // Single point (both closed) or the full circle minus a point (open).
        if (arc.is_point()) return p == arc.start;
        if (p == arc.start) return arc.start_closed || arc.end_closed;
        return true;
    }
    if (p == arc.start) return arc.start_closed;
    if (p == arc.end) return arc.end_closed;
    return p.ccw_from(arc.start) < arc.end.ccw_from(arc.start);
}

}  // namespace laminary
