#include "laminary/monotone.hpp"

#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace laminary;
using testutil::chord;
using testutil::pt;

namespace {

// single-gap reference map: identity on [0,1/4], constant 1/4 on [1/4,1/2],
// linear 1/4 -> 1 on [1/2,1]
MonotoneMap gap_map() {
    return make_monotone({{pt(0), pt(0)}, {pt(1, 4), pt(1, 4)}, {pt(1, 2), pt(1, 4)}});
}

}  // namespace

TEST_CASE("make_monotone validation") {
    CHECK_NOTHROW(gap_map());
    CHECK_THROWS_AS(
        make_monotone({{pt(0), pt(0)}, {pt(1, 2), pt(1, 4)}, {pt(3, 4), pt(1, 8)}}),
        NotMonotoneError);
    CHECK_THROWS_AS(make_monotone({{pt(0), pt(0)}, {pt(0), pt(1, 2)}}), DuplicateXError);
    // equal target values give a gap; the closing segment carries the winding
    auto flat = make_monotone({{pt(0), pt(1, 4)}, {pt(1, 2), pt(1, 4)}});
    REQUIRE(flat.gaps().size() == 1);
    CHECK(flat.gaps()[0] == Arc::open(pt(0), pt(1, 2)));
    CHECK_NOTHROW(MonotoneMap::identity());
    CHECK(MonotoneMap::identity().gaps().empty());
}

TEST_CASE("eval interpolates exactly") {
    auto g = gap_map();
    CHECK(g.eval(pt(3, 8)) == pt(1, 4));
    CHECK(g.eval(pt(3, 4)) == pt(5, 8));
    CHECK(g.eval(pt(1, 8)) == pt(1, 8));
    CHECK(MonotoneMap::identity().eval(pt(2, 7)) == pt(2, 7));
    CHECK(MonotoneMap::rotation(Rational(1, 3)).eval(pt(5, 6)) == pt(1, 6));
}

TEST_CASE("gaps and core") {
    auto g = gap_map();
    auto gaps = g.gaps();
    REQUIRE(gaps.size() == 1);
    CHECK(gaps[0] == Arc::open(pt(1, 4), pt(1, 2)));

    auto core = g.core();
    REQUIRE(core.pieces().size() == 1);
    CHECK(core.pieces()[0] == Arc::closed(pt(1, 2), pt(1, 4)));

    CHECK(MonotoneMap::identity().core().full());
}

TEST_CASE("adjacent gaps merge so no core point is isolated") {
    // raw data with gaps (0,1/4) and (1/4,1/2) and slope 2 afterwards
    auto m = make_monotone(
        {{pt(0), pt(0)}, {pt(1, 4), pt(0)}, {pt(1, 2), pt(0)}});
    auto gaps = m.gaps();
    REQUIRE(gaps.size() == 1);
    CHECK(gaps[0] == Arc::open(pt(0), pt(1, 2)));
    CHECK_FALSE(m.core().contains(pt(1, 4)));
    CHECK(m.core().contains(pt(1, 2)));
    CHECK(m.core().contains(pt(0)));
}

TEST_CASE("normalized maps have disjoint gap closures", "[fuzz]") {
    std::mt19937 rng(7201);
    for (int i = 0; i < 300; ++i) {
        auto m = testutil::random_monotone(rng, 10);
        auto gaps = m.gaps();
        for (std::size_t a = 0; a < gaps.size(); ++a)
            for (std::size_t b = a + 1; b < gaps.size(); ++b) {
                REQUIRE(gaps[a].start != gaps[b].start);
                REQUIRE(gaps[a].end != gaps[b].start);
                REQUIRE(gaps[a].start != gaps[b].end);
                REQUIRE(gaps[a].end != gaps[b].end);
            }
    }
}

TEST_CASE("compose identities and pointwise oracle") {
    auto g = gap_map();
    auto id = MonotoneMap::identity();
    CHECK(compose(g, id) == g);
    CHECK(compose(id, g) == g);

    auto gg = compose(g, g);
    // pointwise agreement on 100 sample points
    for (int i = 0; i < 100; ++i) {
        CirclePoint p{Rational(i, 100)};
        REQUIRE(gg.eval(p) == g.eval(g.eval(p)));
    }
    // the preimage under g of the gap (1/4,1/2) is inside a gap of g∘g
    bool covered = false;
    for (const auto& gap : gg.gaps())
        if (arc_contains(Arc::closed(gap.start, gap.end), pt(5, 8))) covered = true;
    CHECK(covered);  // g(5/8) = 7/16 lies in the gap of g
}

TEST_CASE("compose is associative with eval on random maps", "[fuzz]") {
    std::mt19937 rng(7202);
    for (int i = 0; i < 150; ++i) {
        auto f = testutil::random_monotone(rng, 5);
        auto g = testutil::random_monotone(rng, 5);
        auto fg = compose(g, f);
        for (int k = 0; k < 8; ++k) {
            CirclePoint p = testutil::random_point(rng);
            REQUIRE(fg.eval(p) == g.eval(f.eval(p)));
        }
    }
}

TEST_CASE("pushforward drops degenerate leaves") {
    auto g = gap_map();
    CHECK(pushforward(g, make_lamination({chord(0, 1, 1, 2)})) ==
          make_lamination({chord(0, 1, 1, 4)}));
    CHECK(pushforward(g, make_lamination({chord(5, 16, 7, 16)})).empty());
    auto lam = make_lamination({chord(0, 1, 1, 8), chord(5, 8, 7, 8)});
    CHECK(pushforward(MonotoneMap::identity(), lam) == lam);
}

TEST_CASE("pushforward always yields laminations and is functorial", "[fuzz]") {
    std::mt19937 rng(7203);
    for (int i = 0; i < 1000; ++i) {
        auto m = testutil::random_monotone(rng, 10);
        auto lam = testutil::random_lamination(rng, 20);
        Lamination out;
        REQUIRE_NOTHROW(out = pushforward(m, lam));
        auto m2 = testutil::random_monotone(rng, 5);
        REQUIRE(pushforward(compose(m2, m), lam) == pushforward(m2, out));
    }
}

TEST_CASE("pullback") {
    auto g = gap_map();
    CHECK(pullback(g, make_lamination({chord(0, 1, 1, 4)})) ==
          make_lamination({chord(0, 1, 1, 4), chord(0, 1, 1, 2)}));
    CHECK(pullback(g, Lamination{}) == make_lamination({chord(1, 4, 1, 2)}));
    auto lam = make_lamination({chord(0, 1, 1, 8), chord(5, 8, 7, 8)});
    CHECK(pullback(MonotoneMap::identity(), lam) == lam);
}

TEST_CASE("devil staircase evaluation") {
    CHECK(devil_eval(TriadicRational({1})) == pt(1, 2));
    CHECK(devil_eval(TriadicRational({0, 2})) == pt(1, 4));
    CHECK(devil_eval(TriadicRational(std::vector<int>{})) == pt(0));
    CHECK(devil_eval(TriadicRational({2, 1})) == pt(3, 4));
    CHECK(devil_eval(TriadicRational({1, 2, 1})) == pt(1, 2));
}

TEST_CASE("devil core membership") {
    CHECK(devil_core_member(Rational(1, 4)));
    CHECK_FALSE(devil_core_member(Rational(1, 2)));
    CHECK(devil_core_member(Rational(1, 3)));
    CHECK(devil_core_member(Rational(0)));
    CHECK(devil_core_member(Rational(1)));
    CHECK_FALSE(devil_core_member(Rational(5, 9)));
    CHECK(devil_core_member(Rational(2, 3)));
}

TEST_CASE("core_union merges touching arcs") {
    MonotoneFamily fam;
    fam.vertices = {"u", "v", "w"};
    fam.edges = {{0, 1}, {1, 2}};
    // cores [0,1/4], [1/8,3/8], and a disjoint one [1/2,5/8]
    auto from_core = [](const CirclePoint& a, const CirclePoint& b) {
        // full winding on [a,b], constant on the complementary arc
        return MonotoneMap::from_lifted({a, b}, {Rational(0), Rational(1)});
    };
    fam.maps = {from_core(pt(0), pt(1, 4)), from_core(pt(1, 8), pt(3, 8)),
                from_core(pt(1, 2), pt(5, 8))};

    auto u01 = core_union(fam, {0, 1});
    REQUIRE(u01.pieces().size() == 1);
    CHECK(u01.pieces()[0] == Arc::closed(pt(0), pt(3, 8)));

    auto u02 = core_union(fam, {0, 2});
    CHECK(u02.pieces().size() == 2);

    CHECK(core_union(fam, {1}) == fam.maps[1].core());
    CHECK_THROWS_AS(core_union(fam, {}), EmptySelectionError);
}

namespace {

// map with core inside the closed arc [lo, hi]
MonotoneMap map_with_core_in(std::mt19937& rng, const Rational& lo, const Rational& hi) {
    Rational len = hi - lo;
    std::uniform_int_distribution<int> d(1, 8);
    Rational a = lo + len * d(rng) / 20;
    Rational b = hi - len * d(rng) / 20;
    return MonotoneMap::from_lifted({CirclePoint(a), CirclePoint(b)},
                                    {Rational(0), Rational(1)});
}

}  // namespace

TEST_CASE("unlinked_extension_check on constructed families", "[fuzz]") {
    std::mt19937 rng(7204);
    for (int trial = 0; trial < 100; ++trial) {
        MonotoneFamily fam;
        std::uniform_int_distribution<std::size_t> nd(1, 4);
        std::size_t nx = nd(rng), ny = nd(rng);
        std::set<std::size_t> X, Y;
        for (std::size_t i = 0; i < nx; ++i) {
            fam.vertices.push_back("x" + std::to_string(i));
            fam.maps.push_back(map_with_core_in(rng, Rational(0), Rational(3, 8)));
            if (i > 0) fam.edges.push_back({i - 1, i});
            X.insert(i);
        }
        for (std::size_t i = 0; i < ny; ++i) {
            fam.vertices.push_back("y" + std::to_string(i));
            fam.maps.push_back(map_with_core_in(rng, Rational(1, 2), Rational(7, 8)));
            if (i > 0) fam.edges.push_back({nx + i - 1, nx + i});
            Y.insert(nx + i);
        }
        fam.edges.push_back({0, nx});  // connect the two chains
        auto rep = unlinked_extension_check(fam, X, Y);
        REQUIRE(rep.hypothesis_ok);
        REQUIRE(rep.labels_constant);
        REQUIRE(rep.conclusion_ok);
        REQUIRE(rep.confirmed());
    }
}

TEST_CASE("unlinked_extension_check flags linked cores") {
    MonotoneFamily fam;
    fam.vertices = {"x", "y"};
    fam.edges = {{0, 1}};
    // cores [0,1/2] and [1/4,3/4] link
    fam.maps = {make_monotone({{pt(0), pt(0)}, {pt(1, 2), pt(1, 2)}, {pt(3, 4), pt(1, 2)}}),
                make_monotone({{pt(1, 4), pt(0)}, {pt(3, 4), pt(1, 2)}, {pt(7, 8), pt(1, 2)}})};
    auto rep = unlinked_extension_check(fam, {0}, {1});
    CHECK_FALSE(rep.hypothesis_ok);
    REQUIRE(rep.violation.has_value());
    CHECK_FALSE(rep.confirmed());
}

TEST_CASE("family regularity warnings fire on far-apart cores") {
    MonotoneFamily fam;
    fam.vertices = {"u", "v"};
    fam.edges = {{0, 1}};
    // cores [0,1/8] and [1/2,5/8], separated by more than the default eps
    fam.maps = {MonotoneMap::from_lifted({pt(0), pt(1, 8)}, {Rational(0), Rational(1)}),
                MonotoneMap::from_lifted({pt(1, 2), pt(5, 8)}, {Rational(0), Rational(1)})};
    CHECK_FALSE(family_regularity_warnings(fam).empty());
    MonotoneFamily same;
    same.vertices = {"u", "v"};
    same.edges = {{0, 1}};
    same.maps = {fam.maps[0], fam.maps[0]};
    CHECK(family_regularity_warnings(same).empty());
}

TEST_CASE("devil_eval is monotone and constant exactly on gap plateaus") {
    // all triadic rationals with <= 7 digits, sorted
    std::vector<TriadicRational> ts;
    for (int k = 0; k < 2187; ++k) {
        std::vector<int> digits(7);
        int v = k;
        for (int i = 6; i >= 0; --i) {
            digits[i] = v % 3;
            v /= 3;
        }
        ts.push_back(TriadicRational(digits));
    }
    std::sort(ts.begin(), ts.end(), [](const TriadicRational& a, const TriadicRational& b) {
        return a.value() < b.value();
    });
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        auto a = devil_eval(ts[i]), b = devil_eval(ts[i + 1]);
        REQUIRE(a.turn() <= b.turn());
        Rational mid = (ts[i].value() + ts[i + 1].value()) / 2;
        if (a.turn() == b.turn()) {
            // a plateau step lies inside the closure of a single Cantor gap,
            // so the open interval between the pair avoids the Cantor set
            if (ts[i].value() != ts[i + 1].value())
                REQUIRE_FALSE(devil_core_member(mid));
        } else {
            REQUIRE(ts[i].value() != ts[i + 1].value());
            // distinct values on core points not bounding a common gap
            if (devil_core_member(ts[i]) && devil_core_member(ts[i + 1]))
                REQUIRE((a.turn() < b.turn()));
        }
    }
}
