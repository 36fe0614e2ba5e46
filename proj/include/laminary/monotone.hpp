#pragma once

// Degree-one monotone circle maps in piecewise-linear breakpoint form, their
// gaps and cores, composition, pushforward/pullback of laminations, the
// Devil's staircase, and monotone families over a finite base graph.

#include "laminary/circle.hpp"
#include "laminary/closed_set.hpp"
#include "laminary/lamination.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace laminary {

struct NotMonotoneError : std::runtime_error {
    explicit NotMonotoneError(const std::string& what) : std::runtime_error(what) {}
};

struct DuplicateXError : std::runtime_error {
    CirclePoint x;
    explicit DuplicateXError(CirclePoint p)
        : std::runtime_error("duplicate breakpoint x = " + p.str()), x(std::move(p)) {}
};

/// A degree-one monotone circle map, PL between breakpoints. Internally the
/// target coordinate is lifted to the line: breakpoints (x_i, Y_i) with x_i
/// strictly increasing in [0,1), Y_i non-decreasing, and the closing segment
/// running to (x_0 + 1, Y_0 + 1). Segments with equal lifted values are the
/// gaps. Normalized so that no breakpoint is removable.
class MonotoneMap {
public:
    struct Breakpoint {
        CirclePoint x, y;
        friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
    };

    static MonotoneMap identity() {
        return from_lifted({CirclePoint(Rational(0))}, {Rational(0)});
    }

    static MonotoneMap rotation(const Rational& by) {
        return from_lifted({CirclePoint(Rational(0))}, {frac(by)});
    }

    /// Number of breakpoints after normalization.
    std::size_t breakpoint_count() const { return xs_.size(); }

    std::vector<Breakpoint> breakpoints() const {
        std::vector<Breakpoint> out;
        for (std::size_t i = 0; i < xs_.size(); ++i)
            out.push_back({xs_[i], CirclePoint(frac(ys_[i]))});
        return out;
    }

    CirclePoint eval(const CirclePoint& p) const {
        std::size_t i = segment_of(p);
        Rational x0 = xs_[i].turn();
        Rational dx = p.ccw_from(xs_[i]);
        return CirclePoint(ys_[i] + slope(i) * dx);
    }

    /// Maximal open arcs on which the map is constant.
    std::vector<Arc> gaps() const {
        std::vector<Arc> out;
        for (std::size_t i = 0; i < xs_.size(); ++i)
            if (rise(i) == 0) out.push_back(Arc::open(xs_[i], xs_[(i + 1) % xs_.size()]));
        return out;
    }

    /// Complement of the gaps.
    ClosedCircleSet core() const {
        auto g = gaps();
        if (g.empty()) return ClosedCircleSet::whole_circle();
        std::vector<Arc> arcs;
        for (std::size_t i = 0; i < g.size(); ++i)
            arcs.push_back(Arc::closed(g[i].end, g[(i + 1) % g.size()].start));
        return ClosedCircleSet::from_arcs(std::move(arcs));
    }

    /// Preimage of a point: a closed arc, a single point, never empty,
    /// never the whole circle (the map has degree one).
    Arc preimage(const CirclePoint& y) const {
        // lifted x-intervals on which the target value y is attained
        struct Iv {
            Rational a, b;
        };
        std::vector<Iv> hits;
        const Rational x_base = xs_[0].turn();
        for (std::size_t i = 0; i < xs_.size(); ++i) {
            Rational x0 = x_base + xs_[i].ccw_from(xs_[0]);
            Rational t = ys_[i] + frac(y.turn() - ys_[i]);  // lifted target in [Y_i, Y_i+1)
            if (t > ys_[i] + rise(i)) continue;
            if (rise(i) == 0) {
                hits.push_back({x0, x0 + span(i)});
            } else {
                Rational x = x0 + (t - ys_[i]) / slope(i);
                hits.push_back({x, x});
            }
        }
        if (hits.empty())
            throw std::logic_error("monotone map preimage: value not attained");
        std::sort(hits.begin(), hits.end(),
                  [](const Iv& u, const Iv& v) { return u.a < v.a; });
        std::vector<Iv> merged;
        for (const auto& h : hits) {
            if (!merged.empty() && h.a <= merged.back().b)
                merged.back().b = std::max(merged.back().b, h.b);
            else
                merged.push_back(h);
        }
        if (merged.size() > 1) {
            // the two ends of the cyclic breakpoint list may both touch the value
            if (frac(merged.front().a) == frac(merged.back().b)) {
                merged.front().a = merged.back().a - 1;
                merged.pop_back();
            }
        }
        if (merged.size() != 1)
            throw std::logic_error("monotone map preimage: disconnected preimage");
        CirclePoint s{merged[0].a}, e{merged[0].b};
        return merged[0].a == merged[0].b ? Arc::point(s) : Arc::closed(s, e);
    }

    friend bool operator==(const MonotoneMap& f, const MonotoneMap& g) {
        if (f.xs_ != g.xs_) return false;
        if (f.xs_.empty()) return true;
        // same breakpoints: compare values (lift anchors may differ)
        for (std::size_t i = 0; i < f.xs_.size(); ++i)
            if (frac(f.ys_[i]) != frac(g.ys_[i])) return false;
        return f.rise_profile() == g.rise_profile();
    }

    friend MonotoneMap make_monotone(std::vector<Breakpoint> bps);
    friend MonotoneMap compose(const MonotoneMap& outer, const MonotoneMap& inner);

    /// Builds directly from lifted data (x strictly increasing in [0,1),
    /// Y non-decreasing with total rise exactly 1 around the circle).
    static MonotoneMap from_lifted(std::vector<CirclePoint> xs, std::vector<Rational> ys) {
        MonotoneMap m;
        m.xs_ = std::move(xs);
        m.ys_ = std::move(ys);
        m.validate();
        m.normalize();
        return m;
    }

private:
    MonotoneMap() = default;

    // x-span of segment i (to the next breakpoint, cyclically)
    Rational span(std::size_t i) const {
        if (xs_.size() == 1) return 1;
        return xs_[(i + 1) % xs_.size()].ccw_from(xs_[i]);
    }

    // lifted rise of segment i
    Rational rise(std::size_t i) const {
        if (i + 1 < ys_.size()) return ys_[i + 1] - ys_[i];
        return ys_[0] + 1 - ys_.back();
    }

    Rational slope(std::size_t i) const { return rise(i) / span(i); }

    std::vector<Rational> rise_profile() const {
        std::vector<Rational> out;
        for (std::size_t i = 0; i < xs_.size(); ++i) out.push_back(rise(i));
        return out;
    }

    std::size_t segment_of(const CirclePoint& p) const {
        // last breakpoint with x <= p, cyclically
        std::size_t lo = 0;
        for (std::size_t i = 1; i < xs_.size(); ++i) {
            if (xs_[i].ccw_from(xs_[0]) <= p.ccw_from(xs_[0])) lo = i;
        }
        return lo;
    }

    void validate() const {
        if (xs_.empty()) throw NotMonotoneError("no breakpoints");
        for (std::size_t i = 0; i + 1 < xs_.size(); ++i)
            if (!(xs_[i] < xs_[i + 1])) throw DuplicateXError(xs_[i]);
        Rational total = 0;
        for (std::size_t i = 0; i < xs_.size(); ++i) {
            Rational r = rise(i);
            if (r < 0) throw NotMonotoneError("target values decrease");
            total += r;
        }
        if (total != 1)
            throw NotMonotoneError("total winding is " + format_rational(total) +
                                   ", expected 1");
    }

    void normalize() {
        if (xs_.size() <= 1) {
            if (!ys_.empty()) ys_[0] = frac(ys_[0]);
            return;
        }
        // drop breakpoints where the slope does not change
        std::vector<bool> keep(xs_.size(), true);
        bool any_kept = false;
        for (std::size_t i = 0; i < xs_.size(); ++i) {
            std::size_t prev = (i + xs_.size() - 1) % xs_.size();
            if (slope(prev) == slope(i)) keep[i] = false;
            any_kept = any_kept || keep[i];
        }
        if (!any_kept) keep[0] = true;  // pure rotation
        std::vector<CirclePoint> xs;
        std::vector<Rational> ys;
        for (std::size_t i = 0; i < xs_.size(); ++i) {
            if (!keep[i]) continue;
            xs.push_back(xs_[i]);
            ys.push_back(ys_[i]);
        }
        // re-anchor the lift so Y_0 lands in [0,1)
        Rational shift = ys[0] - frac(ys[0]);
        for (auto& y : ys) y -= shift;
        xs_ = std::move(xs);
        ys_ = std::move(ys);
    }

    std::vector<CirclePoint> xs_;
    std::vector<Rational> ys_;
};

/// Validates and normalizes raw (x, y) breakpoints. Segments between equal
/// consecutive target values are constant (gaps); otherwise the target
/// advances by the fractional difference.
inline MonotoneMap make_monotone(std::vector<MonotoneMap::Breakpoint> bps) {
    if (bps.empty()) throw NotMonotoneError("no breakpoints");
    std::sort(bps.begin(), bps.end(),
              [](const auto& u, const auto& v) { return u.x < v.x; });
    for (std::size_t i = 0; i + 1 < bps.size(); ++i)
        if (bps[i].x == bps[i + 1].x) throw DuplicateXError(bps[i].x);
    std::vector<CirclePoint> xs;
    std::vector<Rational> ys;
    Rational lift = bps[0].y.turn();
    for (std::size_t i = 0; i < bps.size(); ++i) {
        if (i > 0) lift += bps[i].y.ccw_from(bps[i - 1].y);
        xs.push_back(bps[i].x);
        ys.push_back(lift);
    }
    return MonotoneMap::from_lifted(std::move(xs), std::move(ys));
}

/// Exact PL composition outer ∘ inner.
inline MonotoneMap compose(const MonotoneMap& outer, const MonotoneMap& inner) {
    std::set<CirclePoint> cuts(inner.xs_.begin(), inner.xs_.end());
    for (const auto& bx : outer.xs_) {
        Arc pre = inner.preimage(bx);
        cuts.insert(pre.start);
        cuts.insert(pre.end);
    }
    std::vector<MonotoneMap::Breakpoint> bps;
    for (const auto& x : cuts) bps.push_back({x, outer.eval(inner.eval(x))});
    return make_monotone(std::move(bps));
}

/// Image lamination: endpoint pairs collapsed by the map are dropped.
inline Lamination pushforward(const MonotoneMap& m, const Lamination& lam) {
    std::vector<Chord> out;
    for (const auto& c : lam.leaves()) {
        CirclePoint a = m.eval(c.a), b = m.eval(c.b);
        if (a != b) out.emplace_back(a, b);
    }
    return make_lamination(std::move(out));
}

namespace detail {

/// Boundary chords of the convex hull of a closed set: one chord per
/// complementary arc with distinct endpoints.
inline std::vector<Chord> hull_boundary(const ClosedCircleSet& k) {
    std::vector<Chord> out;
    if (k.full() || k.empty()) return out;
    for (const auto& gap : k.complement_arcs())
        if (gap.start != gap.end) out.emplace_back(gap.start, gap.end);
    return out;
}

}  // namespace detail

/// Preimage lamination: classes of the collapsed relation downstairs,
/// augmented with the images of the map's gaps, pulled back and hulled.
/// Note the pullback of the empty lamination is generally nonempty: each gap
/// of the map contributes its closure's hull chord.
inline Lamination pullback(const MonotoneMap& m, const Lamination& lam) {
    std::vector<std::set<CirclePoint>> classes;
    const LaminarRelation rel = lamination_to_relation(lam);
    for (const auto& cls : rel.classes()) classes.push_back(cls);
    // gap images become identified points downstairs
    for (const auto& gap : m.gaps()) {
        CirclePoint v = m.eval(gap.start);
        bool merged = false;
        for (auto& cls : classes) merged = merged || cls.count(v) > 0;
        if (!merged) classes.push_back({v});
    }
    std::vector<Chord> chords;
    for (const auto& cls : classes) {
        ClosedCircleSet pre;
        for (const auto& y : cls) pre.add(m.preimage(y));
        for (auto& c : detail::hull_boundary(pre)) chords.push_back(std::move(c));
    }
    return make_lamination(std::move(chords));
}

// ---------------------------------------------------------------------------
// Devil's staircase

/// Finite base-3 expansion 0.d1 d2 ... dk.
struct TriadicRational {
    std::vector<int> digits;  // each in {0,1,2}

    TriadicRational() = default;
    explicit TriadicRational(std::vector<int> d) : digits(std::move(d)) {
        for (int x : digits)
            if (x < 0 || x > 2) throw std::invalid_argument("triadic digit out of range");
    }

    Rational value() const {
        Rational v = 0, w = 1;
        for (int d : digits) {
            w /= 3;
            v += d * w;
        }
        return v;
    }
};

/// The staircase value: binary digits s_j = 1 iff t_j in {1,2} and j <= i,
/// where i is the first index with t_i = 1 (all indices when there is none).
inline CirclePoint devil_eval(const TriadicRational& t) {
    Rational v = 0, w = 1;
    for (int d : t.digits) {
        w /= 2;
        if (d != 0) v += w;
        if (d == 1) break;
    }
    return CirclePoint(v);
}

/// Membership in the middle-third Cantor set, decided by iterating x -> 3x
/// on [0,1] (1 is a fixed point) and watching for the open middle third.
/// Rational orbits are eventually periodic, so this terminates.
inline bool devil_core_member(const Rational& t) {
    if (t < 0 || t > 1) return false;
    std::set<Rational> seen;
    Rational x = t;
    while (seen.insert(x).second) {
        if (3 * x > 1 && 3 * x < 2) return false;
        x = 3 * x;
        if (x > 1) x -= 2;
    }
    return true;
}

inline bool devil_core_member(const TriadicRational& t) {
    return devil_core_member(t.value());
}

// ---------------------------------------------------------------------------
// Monotone families

struct MonotoneFamily {
    std::vector<std::string> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<MonotoneMap> maps;  // one per vertex

    bool connected(const std::set<std::size_t>& sub) const {
        if (sub.empty()) return true;
        std::set<std::size_t> visited{*sub.begin()};
        std::vector<std::size_t> stack{*sub.begin()};
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (const auto& [a, b] : edges) {
                std::size_t w = a == v ? b : (b == v ? a : v);
                if (w != v && sub.count(w) && visited.insert(w).second) stack.push_back(w);
            }
        }
        return visited.size() == sub.size();
    }
};

struct EmptySelectionError : std::runtime_error {
    EmptySelectionError() : std::runtime_error("empty vertex selection") {}
};

/// Union of the per-vertex cores over X (finite, so the closure is free).
inline ClosedCircleSet core_union(const MonotoneFamily& fam,
                                  const std::set<std::size_t>& x) {
    if (x.empty()) throw EmptySelectionError();
    ClosedCircleSet out;
    for (std::size_t v : x) {
        if (v >= fam.maps.size()) throw std::out_of_range("vertex index");
        out.add(fam.maps[v].core());
    }
    return out;
}

struct UnlinkedExtensionReport {
    bool hypothesis_ok = false;
    // first violating pair when the hypothesis fails
    std::optional<std::pair<std::size_t, std::size_t>> violation;
    // for each y in Y, the gap of phi_y containing every core(phi_x), x in X
    std::map<std::size_t, std::size_t> gap_label_of_y;
    bool labels_constant = false;
    bool conclusion_ok = false;

    bool confirmed() const { return hypothesis_ok && labels_constant && conclusion_ok; }
};

struct HypothesisViolatedError : std::runtime_error {
    std::size_t x, y;
    HypothesisViolatedError(std::size_t xi, std::size_t yi)
        : std::runtime_error("cores of vertices " + std::to_string(xi) + " and " +
                             std::to_string(yi) + " are linked"),
          x(xi),
          y(yi) {}
};

/// Finite check of the core-extension theorem: pairwise-unlinked cores over
/// connected X and Y force core(X) and core(Y) unlinked, via constancy of
/// the per-y gap label along X.
inline UnlinkedExtensionReport unlinked_extension_check(const MonotoneFamily& fam,
                                                        const std::set<std::size_t>& X,
                                                        const std::set<std::size_t>& Y) {
    if (X.empty() || Y.empty()) throw EmptySelectionError();
    if (!fam.connected(X) || !fam.connected(Y))
        throw std::invalid_argument("X and Y must induce connected subgraphs");

    UnlinkedExtensionReport rep;
    rep.hypothesis_ok = true;
    rep.labels_constant = true;
    for (std::size_t y : Y) {
        const ClosedCircleSet cy = fam.maps[y].core();
        std::optional<std::size_t> label;
        for (std::size_t x : X) {
            const ClosedCircleSet cx = fam.maps[x].core();
            auto in_gap_of_y = cx.fits_in_complement_arc_of(cy);
            auto in_gap_of_x = cy.fits_in_complement_arc_of(cx);
            if (!in_gap_of_y || !in_gap_of_x) {
                rep.hypothesis_ok = false;
                rep.violation = {x, y};
                return rep;
            }
            if (!label) {
                label = in_gap_of_y;
                rep.gap_label_of_y[y] = *in_gap_of_y;
            } else if (*label != *in_gap_of_y) {
                rep.labels_constant = false;
            }
        }
    }
    rep.conclusion_ok = unlinked_sets(core_union(fam, X), core_union(fam, Y));
    return rep;
}

/// Semicontinuity proxy: along each edge, every core arc of one endpoint
/// should meet the eps-neighborhood of the other endpoint's core. Violations
/// are warnings, not errors.
inline std::vector<std::string> family_regularity_warnings(
    const MonotoneFamily& fam, const Rational& eps = Rational(1, 100)) {
    std::vector<std::string> warnings;
    auto check = [&](std::size_t from, std::size_t to) {
        ClosedCircleSet hood = fam.maps[to].core().thickened(eps);
        const ClosedCircleSet cf = fam.maps[from].core();
        if (cf.full()) {
            if (!hood.full())
                warnings.push_back("edge " + fam.vertices[from] + "-" + fam.vertices[to] +
                                   ": full core vs partial neighborhood");
            return;
        }
        for (const auto& arc : cf.pieces()) {
            if (!hood.intersects(ClosedCircleSet::from_arcs({arc})))
                warnings.push_back("edge " + fam.vertices[from] + "-" + fam.vertices[to] +
                                   ": core arc at " + arc.start.str() +
                                   " misses the neighbor core");
        }
    };
    for (const auto& [a, b] : fam.edges) {
        check(a, b);
        check(b, a);
    }
    return warnings;
}

}  // namespace laminary
