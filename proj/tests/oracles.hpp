#pragma once

// Independent recomputations used as test oracles.

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "cerebro/network.hpp"
#include "support.hpp"

namespace cerebro::test {

/// Whole graph as one subtree hanging from the root node.
inline SubTree whole_tree(const VesselGraph& g) {
    SubTree t;
    t.label = ArteryLabel::named(ArteryLabel::Kind::MCA, Side::Left);
    t.attachment = g.root_node();
    for (const auto& e : g.edges()) t.edges.push_back(e.id);
    const auto roots = g.out_edges(g.root_node());
    t.root_edges.assign(roots.begin(), roots.end());
    return t;
}

/// Child order at `node` straight from the forest: every record below the
/// child's first segment, found by walking parent pointers.
inline std::vector<EdgeId> oracle_order(const VesselGraph& g, NodeId node) {
    const auto& f = *g.forest();
    const auto out = g.out_edges(node);
    std::vector<EdgeId> kids(out.begin(), out.end());
    struct Key {
        double mean;
        int leaves;
        std::size_t index;
    };
    std::map<EdgeId, Key> keys;
    for (std::size_t i = 0; i < kids.size(); ++i) {
        const int head = g.edge(kids[i]).segment_ids.front();
        double sum = 0.0;
        int count = 0;
        int leaves = 0;
        for (const auto& r : f.records()) {
            int cur = r.id;
            while (cur != -1 && cur != head) cur = f.record(cur).parent_id;
            if (cur != head) continue;
            sum += r.position.x;
            ++count;
            if (f.children(r.id).empty()) ++leaves;
        }
        keys[kids[i]] = {sum / count, leaves, i};
    }
    std::sort(kids.begin(), kids.end(), [&](EdgeId a, EdgeId b) {
        const Key& x = keys[a];
        const Key& y = keys[b];
        if (x.mean != y.mean) return x.mean < y.mean;
        if (x.leaves != y.leaves) return x.leaves > y.leaves;
        return x.index < y.index;
    });
    return kids;
}

/// Random binary tree growing upward with at most `max_leaves` leaves.
inline SegmentForest random_tree(std::mt19937_64& rng, int max_leaves) {
    std::vector<SwcRecord> recs{{1, 3, {0, 0, 0}, 1.0, -1}};
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    struct Tip {
        int id;
        Vec3 pos;
        Vec3 dir;
    };
    std::vector<Tip> tips{{1, {0, 0, 0}, {0, 1, 0}}};
    int leaves = 1;
    std::size_t cursor = 0;
    while (cursor < tips.size()) {
        Tip t = tips[cursor++];
        const int len = 2 + static_cast<int>(rng() % 4);
        for (int i = 0; i < len; ++i) {
            const Vec3 p = t.pos + t.dir + Vec3{u(rng) * 0.3, 0, u(rng) * 0.3};
            const int id = static_cast<int>(recs.size()) + 1;
            recs.push_back({id, 3, p, 1.0, t.id});
            t = {id, p, t.dir};
        }
        if (leaves < max_leaves && rng() % 3 != 0) {
            ++leaves;
            tips.push_back({t.id, t.pos, normalized({-0.6 + u(rng) * 0.5, 1, 0})});
            tips.push_back({t.id, t.pos, normalized({0.6 + u(rng) * 0.5, 1, 0})});
        }
    }
    return SegmentForest(std::move(recs));
}

/// Basilar trunk forking into two unlabeled trees with the given radii.
inline LabeledNetwork fork_network(double r1, double r2) {
    std::vector<SwcRecord> r;
    for (const auto& p : walk({{0, -4, 0}, {0, 0, 0}})) {
        const int id = static_cast<int>(r.size()) + 1;
        r.push_back({id, 3, p, 2.0, id == 1 ? -1 : id - 1});
    }
    const int fork_id = static_cast<int>(r.size());
    const auto add = [&](Vec3 end, double radius) {
        int prev = fork_id;
        const auto pts = walk({{0, 0, 0}, end});
        for (std::size_t i = 1; i < pts.size(); ++i) {
            const int id = static_cast<int>(r.size()) + 1;
            r.push_back({id, 3, pts[i], radius, prev});
            prev = id;
        }
    };
    add({-3, 3, 0}, r1);
    add({3, 3, 0}, r2);
    auto g = contract_chains(SegmentForest(r));
    return LabeledNetwork(g, {{1, ArteryLabel::ba()},
                              {2, ArteryLabel::unlabeled(Side::Left, 0)},
                              {3, ArteryLabel::unlabeled(Side::Right, 0)}});
}

/// k alternating runs (horizontal first) of 6 unit steps each.
inline std::vector<Vec3> zigzag(int k) {
    std::vector<Vec3> way{{0, 0, 0}};
    Vec3 cur;
    for (int i = 0; i < k; ++i) {
        cur = cur + (i % 2 == 0 ? Vec3{6, 0, 0} : Vec3{0, -6, 0});
        way.push_back(cur);
    }
    return walk(way);
}

}  // namespace cerebro::test
