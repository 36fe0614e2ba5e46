#pragma once

// Finite model of the simply-connected non-Hausdorff 1-manifold of leaves:
// named leaves, chain charts generating a partial order, nonseparated pairs
// with side tags, and the tree Hausdorffification everything walks on.

#include "laminary/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace laminary {

enum class Side { Positive, Negative };

inline const char* to_string(Side s) { return s == Side::Positive ? "positive" : "negative"; }

enum class Branching { RCovered, OneSidedPositive, OneSidedNegative, TwoSided };

inline const char* to_string(Branching b) {
    switch (b) {
        case Branching::RCovered: return "RCovered";
        case Branching::OneSidedPositive: return "OneSidedPositive";
        case Branching::OneSidedNegative: return "OneSidedNegative";
        default: return "TwoSided";
    }
}

struct UnknownLeafError : std::runtime_error {
    explicit UnknownLeafError(const std::string& name)
        : std::runtime_error("unknown leaf: " + name) {}
};

struct NonsepPair {
    std::string a, b;
    Side side;
};

struct PathStep {
    enum class Via { Start, Run, Corner };
    std::string leaf;
    Via via;
    friend bool operator==(const PathStep&, const PathStep&) = default;
};

class LeafSpace {
public:
    /// Empty space; placeholder for containers, every query rejects.
    LeafSpace() = default;

    LeafSpace(std::vector<std::string> leaves,
              std::vector<std::vector<std::string>> segments,
              std::vector<NonsepPair> nonsep)
        : leaves_(std::move(leaves)), nonsep_(std::move(nonsep)) {
        for (std::size_t i = 0; i < leaves_.size(); ++i)
            if (!index_.emplace(leaves_[i], i).second)
                throw std::invalid_argument("duplicate leaf name: " + leaves_[i]);
        for (const auto& seg : segments) {
            std::vector<std::size_t> chain;
            for (const auto& name : seg) chain.push_back(require(name));
            if (chain.size() < 2)
                throw std::invalid_argument("segment needs at least two leaves");
            segments_.push_back(std::move(chain));
        }
        build_order();
        build_clusters();
        build_tree();
        check_sides();
    }

    const std::vector<std::string>& leaves() const { return leaves_; }
    const std::vector<NonsepPair>& nonseparated() const { return nonsep_; }
    std::size_t size() const { return leaves_.size(); }

    std::size_t index_of(const std::string& name) const { return require(name); }
    const std::string& name_of(std::size_t i) const { return leaves_.at(i); }

    bool less(const std::string& a, const std::string& b) const {
        return less_[require(a)][require(b)];
    }
    bool less(std::size_t a, std::size_t b) const { return less_[a][b]; }

    bool comparable(const std::string& a, const std::string& b) const {
        std::size_t i = require(a), j = require(b);
        return i == j || less_[i][j] || less_[j][i];
    }
    bool comparable(std::size_t i, std::size_t j) const {
        return i == j || less_[i][j] || less_[j][i];
    }

    /// Which side of `base` the leaf `other` lies on: the first step of the
    /// tree path, signed by chart orientation. For a nonseparated partner the
    /// path descends (positive cluster) or ascends (negative cluster) through
    /// the common approach family first.
    Side positive_side(const std::string& base, const std::string& other) const {
        std::size_t b = require(base), o = require(other);
        if (b == o) throw std::invalid_argument("positive_side: other equals base");
        if (cluster_[b] == cluster_[o])
            return cluster_side(cluster_[b]) == Side::Positive ? Side::Negative
                                                               : Side::Positive;
        auto path = class_path(cluster_[b], cluster_[o]);
        // direction of the unique class-tree edge out of base's class
        // (consistent across parallel chart edges by construction)
        for (const auto& [u, v] : cover_edges_) {
            if (cluster_[u] == path[0] && cluster_[v] == path[1]) return Side::Positive;
            if (cluster_[v] == path[0] && cluster_[u] == path[1]) return Side::Negative;
        }
        throw std::logic_error("class path without a connecting chart edge");
    }
    Side positive_side(std::size_t b, std::size_t o) const {
        return positive_side(leaves_[b], leaves_[o]);
    }

    Branching classify_branching() const {
        bool pos = false, neg = false;
        for (const auto& p : nonsep_) (p.side == Side::Positive ? pos : neg) = true;
        if (!pos && !neg) return Branching::RCovered;
        if (pos && neg) return Branching::TwoSided;
        return pos ? Branching::OneSidedPositive : Branching::OneSidedNegative;
    }

    /// Minimal alternating sequence of comparable runs and corner turns from
    /// a to b. Monotone runs are collapsed to their endpoints.
    std::vector<PathStep> path_decompose(const std::string& a, const std::string& b) const {
        std::size_t ia = require(a), ib = require(b);
        std::vector<PathStep> steps{{a, PathStep::Via::Start}};
        if (ia == ib) return steps;
        int run_dir = 0;  // +1 ascending, -1 descending, 0 none
        auto push_run = [&](std::size_t to) {
            std::size_t from = index_.at(steps.back().leaf);
            int dir = less_[from][to] ? +1 : -1;
            if (steps.back().via == PathStep::Via::Run && dir == run_dir)
                steps.back().leaf = leaves_[to];
            else
                steps.push_back({leaves_[to], PathStep::Via::Run});
            run_dir = dir;
        };
        auto push_corner = [&](std::size_t to) {
            steps.push_back({leaves_[to], PathStep::Via::Corner});
            run_dir = 0;
        };
        auto classes = class_path(cluster_[ia], cluster_[ib]);
        for (const auto& [exit_leaf, entry_leaf] : choose_edges(classes, ia, ib)) {
            if (index_.at(steps.back().leaf) != exit_leaf) push_corner(exit_leaf);
            push_run(entry_leaf);
        }
        if (index_.at(steps.back().leaf) != ib) push_corner(ib);
        return steps;
    }

    std::size_t cluster_of(std::size_t leaf) const { return cluster_[leaf]; }

    /// Leaves sharing a nonseparation cluster with `leaf` (excluding itself).
    std::vector<std::size_t> cluster_partners(std::size_t leaf) const {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < leaves_.size(); ++j)
            if (j != leaf && cluster_[j] == cluster_[leaf]) out.push_back(j);
        return out;
    }

    std::optional<Side> cluster_side_of(std::size_t leaf) const {
        if (cluster_partners(leaf).empty()) return std::nullopt;
        return cluster_side(cluster_[leaf]);
    }

    const std::vector<std::pair<std::size_t, std::size_t>>& cover_edges() const {
        return cover_edges_;
    }

private:
    std::size_t require(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw UnknownLeafError(name);
        return it->second;
    }

    void build_order() {
        std::size_t n = leaves_.size();
        less_.assign(n, std::vector<bool>(n, false));
        for (const auto& seg : segments_)
            for (std::size_t i = 0; i + 1 < seg.size(); ++i) less_[seg[i]][seg[i + 1]] = true;
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                if (less_[i][k])
                    for (std::size_t j = 0; j < n; ++j)
                        if (less_[k][j]) less_[i][j] = true;
        for (std::size_t i = 0; i < n; ++i)
            if (less_[i][i])
                throw std::invalid_argument("segment orders contain a cycle through " +
                                            leaves_[i]);
    }

    void build_clusters() {
        std::size_t n = leaves_.size();
        cluster_.resize(n);
        for (std::size_t i = 0; i < n; ++i) cluster_[i] = i;
        auto find = [&](std::size_t x) {
            while (cluster_[x] != x) x = cluster_[x];
            return x;
        };
        for (const auto& p : nonsep_) {
            std::size_t a = require(p.a), b = require(p.b);
            if (comparable(a, b))
                throw std::invalid_argument("nonseparated pair " + p.a + "," + p.b +
                                            " is comparable");
            cluster_[find(a)] = find(b);
        }
        for (std::size_t i = 0; i < n; ++i) cluster_[i] = find(i);
        // uniform side tag per cluster; cluster members pairwise incomparable
        for (const auto& p : nonsep_) {
            std::size_t a = require(p.a);
            for (const auto& q : nonsep_)
                if (cluster_[require(q.a)] == cluster_[a] && q.side != p.side)
                    throw std::invalid_argument("mixed side tags in cluster of " + p.a);
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (cluster_[i] == cluster_[j] && comparable(i, j))
                    throw std::invalid_argument("comparable leaves " + leaves_[i] + "," +
                                                leaves_[j] + " in one cluster");
    }

    Side cluster_side(std::size_t cls) const {
        for (const auto& p : nonsep_)
            if (cluster_[index_.at(p.a)] == cls) return p.side;
        throw std::logic_error("cluster without side tag");
    }

    void build_tree() {
        std::size_t n = leaves_.size();
        // Hasse reduction of the direct chart edges
        std::set<std::pair<std::size_t, std::size_t>> direct;
        for (const auto& seg : segments_)
            for (std::size_t i = 0; i + 1 < seg.size(); ++i)
                direct.insert({seg[i], seg[i + 1]});
        for (const auto& [u, v] : direct) {
            bool implied = false;
            for (std::size_t w = 0; w < n && !implied; ++w)
                implied = less_[u][w] && less_[w][v];
            if (!implied) cover_edges_.push_back({u, v});
        }
        // the class graph must be a tree; parallel chart edges between the
        // same cluster pair are fine (a family approaching a nonseparated
        // cluster touches each member) but must agree in direction
        std::set<std::pair<std::size_t, std::size_t>> class_edges;
        std::map<std::pair<std::size_t, std::size_t>, bool> direction;  // key asc from key.first
        for (const auto& [u, v] : cover_edges_) {
            auto e = std::minmax(cluster_[u], cluster_[v]);
            if (e.first == e.second)
                throw std::invalid_argument("chart edge inside a nonseparation cluster");
            class_edges.insert({e.first, e.second});
            bool asc = cluster_[u] == e.first;  // edge ascends lower->upper leaf
            auto [it, fresh] = direction.emplace(e, asc);
            if (!fresh && it->second != asc)
                throw std::invalid_argument(
                    "inconsistent order between nonseparation clusters");
        }
        std::set<std::size_t> classes(cluster_.begin(), cluster_.end());
        if (class_edges.size() + 1 != classes.size())
            throw std::invalid_argument(
                class_edges.size() + 1 > classes.size()
                    ? "Hausdorffification is not a tree (cycle)"
                    : "leaf space is disconnected");
        // connectivity via spanning walk
        if (!classes.empty()) {
            std::set<std::size_t> visited{*classes.begin()};
            std::vector<std::size_t> stack{*classes.begin()};
            while (!stack.empty()) {
                std::size_t c = stack.back();
                stack.pop_back();
                for (const auto& [x, y] : class_edges) {
                    std::size_t o = x == c ? y : (y == c ? x : c);
                    if (o != c && visited.insert(o).second) stack.push_back(o);
                }
            }
            if (visited.size() != classes.size())
                throw std::invalid_argument("leaf space is disconnected");
        }
    }

    void check_sides() {
        for (const auto& p : nonsep_) {
            std::size_t a = require(p.a), b = require(p.b);
            bool ok = false;
            for (std::size_t v = 0; v < leaves_.size(); ++v) {
                if (p.side == Side::Positive && less_[v][a] && less_[v][b]) ok = true;
                if (p.side == Side::Negative && less_[a][v] && less_[b][v]) ok = true;
            }
            if (!ok)
                throw std::invalid_argument("no common approach leaf for nonseparated pair " +
                                            p.a + "," + p.b);
        }
    }

    /// Unique path in the class tree, as the class sequence from -> to.
    std::vector<std::size_t> class_path(std::size_t from, std::size_t to) const {
        std::map<std::size_t, std::size_t> parent;
        std::vector<std::size_t> queue{from};
        parent[from] = from;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            std::size_t c = queue[qi];
            if (c == to) break;
            for (const auto& [u, v] : cover_edges_) {
                std::size_t cu = cluster_[u], cv = cluster_[v];
                std::size_t o = cu == c ? cv : (cv == c ? cu : c);
                if (o != c && !parent.count(o)) {
                    parent[o] = c;
                    queue.push_back(o);
                }
            }
        }
        std::vector<std::size_t> classes;
        for (std::size_t c = to;; c = parent.at(c)) {
            classes.push_back(c);
            if (parent.at(c) == c) break;
        }
        std::reverse(classes.begin(), classes.end());
        return classes;
    }

    /// Between consecutive classes on a path, several parallel chart edges may
    /// exist (one per cluster member the approach family touches); pick the
    /// combination minimizing corner turns. Returns one chosen cover edge per
    /// step as (exit leaf, entry leaf).
    std::vector<std::pair<std::size_t, std::size_t>> choose_edges(
        const std::vector<std::size_t>& classes, std::size_t start_leaf,
        std::size_t target_leaf) const {
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> cand(
            classes.size() > 0 ? classes.size() - 1 : 0);
        for (std::size_t k = 0; k + 1 < classes.size(); ++k) {
            for (const auto& [u, v] : cover_edges_) {
                if (cluster_[u] == classes[k] && cluster_[v] == classes[k + 1])
                    cand[k].push_back({u, v});
                else if (cluster_[v] == classes[k] && cluster_[u] == classes[k + 1])
                    cand[k].push_back({v, u});
            }
        }
        // tiny DP over candidate edges, cost = number of corner turns
        std::vector<std::vector<std::size_t>> cost(cand.size());
        std::vector<std::vector<std::size_t>> back(cand.size());
        for (std::size_t k = 0; k < cand.size(); ++k) {
            cost[k].assign(cand[k].size(), 0);
            back[k].assign(cand[k].size(), 0);
            for (std::size_t j = 0; j < cand[k].size(); ++j) {
                if (k == 0) {
                    cost[k][j] = cand[k][j].first == start_leaf ? 0 : 1;
                } else {
                    std::size_t best = SIZE_MAX, who = 0;
                    for (std::size_t i = 0; i < cand[k - 1].size(); ++i) {
                        std::size_t c = cost[k - 1][i] +
                                        (cand[k][j].first == cand[k - 1][i].second ? 0 : 1);
                        if (c < best) {
                            best = c;
                            who = i;
                        }
                    }
                    cost[k][j] = best;
                    back[k][j] = who;
                }
            }
        }
        std::vector<std::pair<std::size_t, std::size_t>> chosen(cand.size());
        if (!cand.empty()) {
            std::size_t best = SIZE_MAX, who = 0;
            for (std::size_t j = 0; j < cand.back().size(); ++j) {
                std::size_t c = cost.back()[j] +
                                (cand.back()[j].second == target_leaf ? 0 : 1);
                if (c < best) {
                    best = c;
                    who = j;
                }
            }
            for (std::size_t k = cand.size(); k-- > 0;) {
                chosen[k] = cand[k][who];
                who = back[k][who];
            }
        }
        return chosen;
    }

    std::vector<std::string> leaves_;
    std::map<std::string, std::size_t> index_;
    std::vector<std::vector<std::size_t>> segments_;
    std::vector<NonsepPair> nonsep_;
    std::vector<std::vector<bool>> less_;
    std::vector<std::size_t> cluster_;
    std::vector<std::pair<std::size_t, std::size_t>> cover_edges_;  // (lower, upper)
};

// ---------------------------------------------------------------------------
// Automorphisms

struct LeafAutomorphism {
    std::string name;
    std::map<std::string, std::string> map;  // leaf -> leaf, total bijection
};

struct AutomorphismReport {
    bool ok = true;
    std::vector<std::string> witnesses;
};

inline std::string apply_automorphism(const LeafSpace& space, const LeafAutomorphism& g,
                                      const std::string& leaf) {
    space.index_of(leaf);  // throws UnknownLeaf
    auto it = g.map.find(leaf);
    if (it == g.map.end()) throw UnknownLeafError(leaf + " (missing from automorphism)");
    space.index_of(it->second);
    return it->second;
}

/// Checks the permutation is total, bijective, order-preserving, and carries
/// nonseparated pairs to nonseparated pairs with the same side tag.
inline AutomorphismReport verify_automorphism(const LeafSpace& space,
                                              const LeafAutomorphism& g) {
    AutomorphismReport rep;
    std::set<std::string> image;
    for (const auto& leaf : space.leaves()) {
        auto it = g.map.find(leaf);
        if (it == g.map.end()) {
            rep.ok = false;
            rep.witnesses.push_back("not total at " + leaf);
            return rep;
        }
        if (!image.insert(it->second).second) {
            rep.ok = false;
            rep.witnesses.push_back("not injective at " + it->second);
            return rep;
        }
    }
    for (const auto& a : space.leaves())
        for (const auto& b : space.leaves())
            if (space.less(a, b) != space.less(g.map.at(a), g.map.at(b))) {
                rep.ok = false;
                rep.witnesses.push_back("order not preserved on (" + a + "," + b + ")");
            }
    for (const auto& p : space.nonseparated()) {
        const std::string ia = g.map.at(p.a), ib = g.map.at(p.b);
        bool found = false;
        for (const auto& q : space.nonseparated())
            if (((q.a == ia && q.b == ib) || (q.a == ib && q.b == ia)) && q.side == p.side)
                found = true;
        if (!found) {
            rep.ok = false;
            rep.witnesses.push_back("nonseparation not preserved on (" + p.a + "," + p.b + ")");
        }
    }
    return rep;
}

}  // namespace laminary
