#include "laminary/leafspace.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace laminary;

namespace {

// simple chain a < b < c
LeafSpace chain() { return LeafSpace({"a", "b", "c"}, {{"a", "b", "c"}}, {}); }

// one nonseparated pair lam,mu approached from below by nu0 < nu1
LeafSpace one_branch() {
    return LeafSpace({"nu0", "nu1", "lam", "mu"},
                     {{"nu0", "nu1", "lam"}, {"nu0", "nu1", "mu"}},
                     {{"lam", "mu", Side::Positive}});
}

// two-sided branching: b0 < lam < lamp < t0, mu nonseparated with lam from
// below, nu nonseparated with lamp from above
LeafSpace two_branches() {
    return LeafSpace({"b0", "lam", "lamp", "mu", "nu", "t0"},
                     {{"b0", "lam", "lamp", "t0"}, {"b0", "mu"}, {"nu", "t0"}},
                     {{"lam", "mu", Side::Positive}, {"lamp", "nu", Side::Negative}});
}

}  // namespace

TEST_CASE("order closure on chains") {
    auto L1 = chain();
    CHECK(L1.less("a", "c"));
    CHECK_FALSE(L1.less("c", "a"));
    CHECK(L1.comparable("a", "c"));
    CHECK_THROWS_AS(L1.less("a", "zz"), UnknownLeafError);

    auto L2 = one_branch();
    CHECK(L2.less("nu0", "lam"));
    CHECK(L2.less("nu0", "mu"));
    CHECK_FALSE(L2.comparable("lam", "mu"));
}

TEST_CASE("invalid leaf spaces are rejected") {
    // cycle
    CHECK_THROWS_AS(LeafSpace({"a", "b"}, {{"a", "b"}, {"b", "a"}}, {}),
                    std::invalid_argument);
    // comparable nonseparated pair
    CHECK_THROWS_AS(LeafSpace({"a", "b"}, {{"a", "b"}}, {{"a", "b", Side::Positive}}),
                    std::invalid_argument);
    // no common approach leaf for the claimed side
    CHECK_THROWS_AS(LeafSpace({"nu", "lam", "mu"}, {{"nu", "lam"}, {"nu", "mu"}},
                              {{"lam", "mu", Side::Negative}}),
                    std::invalid_argument);
    // disconnected
    CHECK_THROWS_AS(LeafSpace({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}}, {}),
                    std::invalid_argument);
    // mixed side tags in one cluster (three-leaf cluster)
    CHECK_THROWS_AS(
        LeafSpace({"n", "t", "a", "b", "c"},
                  {{"n", "a", "t"}, {"n", "b", "t"}, {"n", "c", "t"}},
                  {{"a", "b", Side::Positive}, {"b", "c", Side::Negative}}),
        std::invalid_argument);
    // duplicate name
    CHECK_THROWS_AS(LeafSpace({"a", "a"}, {{"a", "a"}}, {}), std::invalid_argument);
}

TEST_CASE("positive_side") {
    auto L1 = chain();
    CHECK(L1.positive_side("b", "c") == Side::Positive);
    CHECK(L1.positive_side("b", "a") == Side::Negative);
    CHECK_THROWS_AS(L1.positive_side("b", "b"), std::invalid_argument);

    auto L2 = one_branch();
    // the path to the nonseparated partner descends through the common
    // approach family first
    CHECK(L2.positive_side("lam", "mu") == Side::Negative);
    CHECK(L2.positive_side("mu", "lam") == Side::Negative);
    CHECK(L2.positive_side("nu0", "mu") == Side::Positive);

    auto L3 = two_branches();
    CHECK(L3.positive_side("lam", "nu") == Side::Positive);
    CHECK(L3.positive_side("mu", "b0") == Side::Negative);
    CHECK(L3.positive_side("mu", "t0") == Side::Positive);

    // order implies side, not conversely
    for (const auto& sp : {L1, L2, L3})
        for (const auto& x : sp.leaves())
            for (const auto& y : sp.leaves())
                if (sp.less(x, y)) REQUIRE(sp.positive_side(x, y) == Side::Positive);
}

TEST_CASE("classify_branching") {
    CHECK(chain().classify_branching() == Branching::RCovered);
    CHECK(one_branch().classify_branching() == Branching::OneSidedPositive);
    CHECK(two_branches().classify_branching() == Branching::TwoSided);
    LeafSpace neg({"t", "lam", "mu"}, {{"lam", "t"}, {"mu", "t"}},
                  {{"lam", "mu", Side::Negative}});
    CHECK(neg.classify_branching() == Branching::OneSidedNegative);
}

TEST_CASE("path_decompose") {
    auto L1 = chain();
    auto p = L1.path_decompose("a", "c");
    REQUIRE(p.size() == 2);
    CHECK(p[0] == PathStep{"a", PathStep::Via::Start});
    CHECK(p[1] == PathStep{"c", PathStep::Via::Run});

    auto L2 = one_branch();
    auto q = L2.path_decompose("lam", "mu");
    REQUIRE(q.size() == 2);
    CHECK(q[0] == PathStep{"lam", PathStep::Via::Start});
    CHECK(q[1] == PathStep{"mu", PathStep::Via::Corner});

    auto L3 = two_branches();
    auto r = L3.path_decompose("mu", "nu");
    REQUIRE(r.size() == 4);
    CHECK(r[0] == PathStep{"mu", PathStep::Via::Start});
    CHECK(r[1] == PathStep{"lam", PathStep::Via::Corner});
    CHECK(r[2] == PathStep{"lamp", PathStep::Via::Run});
    CHECK(r[3] == PathStep{"nu", PathStep::Via::Corner});

    // minimal corner count: entering the lam/mu cluster from below picks the
    // member that continues upward without a turn
    auto s = L3.path_decompose("b0", "nu");
    REQUIRE(s.size() == 3);
    CHECK(s[0] == PathStep{"b0", PathStep::Via::Start});
    CHECK(s[1] == PathStep{"lamp", PathStep::Via::Run});
    CHECK(s[2] == PathStep{"nu", PathStep::Via::Corner});
}

TEST_CASE("path_decompose reverses to the reverse path") {
    auto L3 = two_branches();
    for (const auto& x : L3.leaves())
        for (const auto& y : L3.leaves()) {
            auto fwd = L3.path_decompose(x, y);
            auto bwd = L3.path_decompose(y, x);
            REQUIRE(fwd.size() == bwd.size());
            std::size_t fwd_corners = 0, bwd_corners = 0;
            for (std::size_t i = 0; i < fwd.size(); ++i) {
                // leaf sequence reverses exactly; corner tags attach to the
                // leaf a turn switches to, so they shift by one across the
                // reversal but their count is preserved
                REQUIRE(fwd[i].leaf == bwd[bwd.size() - 1 - i].leaf);
                if (fwd[i].via == PathStep::Via::Corner) ++fwd_corners;
                if (bwd[i].via == PathStep::Via::Corner) ++bwd_corners;
            }
            REQUIRE(fwd_corners == bwd_corners);
        }
}

TEST_CASE("clusters") {
    auto L3 = two_branches();
    std::size_t lam = L3.index_of("lam"), mu = L3.index_of("mu");
    CHECK(L3.cluster_of(lam) == L3.cluster_of(mu));
    CHECK(L3.cluster_partners(lam) == std::vector<std::size_t>{mu});
    CHECK(L3.cluster_side_of(lam) == Side::Positive);
    CHECK(L3.cluster_side_of(L3.index_of("nu")) == Side::Negative);
    CHECK_FALSE(L3.cluster_side_of(L3.index_of("b0")).has_value());
}

TEST_CASE("automorphisms") {
    auto L2 = one_branch();
    LeafAutomorphism id{"id", {{"nu0", "nu0"}, {"nu1", "nu1"}, {"lam", "lam"}, {"mu", "mu"}}};
    CHECK(verify_automorphism(L2, id).ok);
    CHECK(apply_automorphism(L2, id, "lam") == "lam");

    LeafAutomorphism swap{"swap",
                          {{"nu0", "nu0"}, {"nu1", "nu1"}, {"lam", "mu"}, {"mu", "lam"}}};
    CHECK(verify_automorphism(L2, swap).ok);

    LeafAutomorphism bad{"bad",
                         {{"nu0", "nu1"}, {"nu1", "nu0"}, {"lam", "lam"}, {"mu", "mu"}}};
    auto rep = verify_automorphism(L2, bad);
    CHECK_FALSE(rep.ok);
    CHECK_FALSE(rep.witnesses.empty());

    LeafAutomorphism partial{"partial", {{"nu0", "nu0"}}};
    CHECK_FALSE(verify_automorphism(L2, partial).ok);
    CHECK_THROWS_AS(apply_automorphism(L2, partial, "lam"), UnknownLeafError);

    // branching classification is invariant under verified automorphisms
    CHECK(L2.classify_branching() == Branching::OneSidedPositive);
}
