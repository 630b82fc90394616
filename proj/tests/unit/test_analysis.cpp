#include <cmath>
#include <random>

#include "cerebro/analysis.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cerebro;
using cerebro::test::classified;
using K = ArteryLabel::Kind;

namespace {

LabeledNetwork network_of(const SegmentForest& f) {
    return reconstruct_cow(classify_arteries_strict(contract_chains(f)));
}

std::vector<EdgeId> cerebral_edges(const LabeledNetwork& net) {
    std::vector<EdgeId> out;
    for (const auto& [_, t] : net.cerebral_trees()) out.insert(out.end(), t.edges.begin(), t.edges.end());
    return out;
}

// Longest root-to-leaf edge count, by walking the forest itself.
int forest_depth(const SegmentForest& f, int record) {
    int best = 0;
    for (int c : f.children(record)) best = std::max(best, forest_depth(f, c));
    const bool fork = f.children(record).size() >= 2;
    return best + (fork ? 1 : 0);
}

}  // namespace

TEST_CASE("stenosis scales the central half of the edge only") {
    const auto p = classified(2);
    const auto& g = p.network.graph();
    const EdgeId target = cerebral_edges(p.network).front();
    const auto out = inject_stenosis(g, target, 0.7);
    const auto& e = g.edge(target);
    const std::set<int> seg(e.segment_ids.begin(), e.segment_ids.end());
    int scaled = 0;
    REQUIRE(out.size() == p.scan.forest.size());
    for (const auto& r : p.scan.forest.records()) {
        const auto& q = out.record(r.id);
        CHECK(q.position == r.position);
        CHECK(q.parent_id == r.parent_id);
        CHECK(q.type_code == r.type_code);
        if (q.radius != r.radius) {
            CHECK(seg.count(r.id) == 1);
            CHECK(q.radius == doctest::Approx(0.3 * r.radius).epsilon(1e-15));
            ++scaled;
        }
    }
    CHECK(scaled > 0);
    CHECK(scaled < static_cast<int>(seg.size()));
    CHECK(contract_chains(out).edges().size() == g.edges().size() - 1);  // without the dashed A. Comm.
}

TEST_CASE("tiny severity leaves the forest numerically unchanged") {
    const auto p = classified(2);
    const auto out = inject_stenosis(p.network.graph(), cerebral_edges(p.network).front(), 1e-9);
    for (const auto& r : p.scan.forest.records()) {
        CHECK(out.record(r.id).radius == doctest::Approx(r.radius).epsilon(1e-8));
    }
}

TEST_CASE("stenosis rejects bad edges and severities") {
    const auto p = classified(2);
    const auto& g = p.network.graph();
    const EdgeId e = cerebral_edges(p.network).front();
    CHECK_THROWS_AS(inject_stenosis(g, 9999, 0.5), UnknownEdge);
    CHECK_THROWS_AS(inject_stenosis(g, e, 1.2), SeverityOutOfRange);
    CHECK_THROWS_AS(inject_stenosis(g, e, 0.0), SeverityOutOfRange);
    CHECK_THROWS_AS(inject_stenosis(g, e, -0.1), SeverityOutOfRange);
}

TEST_CASE("healthy and uniform scans report no outliers") {
    SynthParams healthy;
    healthy.taper = 0.85;
    healthy.noise = 0.02;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        CHECK(detect_width_outliers(classified(seed, healthy).network).entries.empty());
    }
    SynthParams uniform;
    uniform.taper = 1.0;
    uniform.noise = 0.0;
    const auto p = classified(1, uniform);
    CHECK(detect_width_outliers(p.network).entries.empty());
}

TEST_CASE("injected stenosis is the top narrowing flag") {
    std::mt19937_64 rng(11);
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        CAPTURE(seed);
        const auto p = classified(seed);
        const auto edges = cerebral_edges(p.network);
        const EdgeId target = edges[rng() % edges.size()];
        const auto net = network_of(inject_stenosis(p.network.graph(), target, 0.7));
        const auto report = detect_width_outliers(net);
        const auto top = report.top_narrowing();
        REQUIRE(top);
        CHECK(top->edge_id == target);
        CHECK(top->taper_ratio < 0.5);
        for (const auto& o : report.entries) {
            if (o.kind == OutlierKind::Narrowing) CHECK(o.taper_ratio < 0.5);
            if (o.kind == OutlierKind::Widening) CHECK(o.taper_ratio > 1.5);
        }
    }
}

TEST_CASE("full binary trees are symmetric") {
    SynthParams full;
    full.min_depth = full.max_depth = 3;
    full.branch_probability = 1.0;
    const auto p = classified(5, full);
    const auto rep = symmetry_metrics(p.network);
    REQUIRE(rep.pairs.size() == 3);
    for (const auto& pair : rep.pairs) {
        CHECK(pair.complete());
        CHECK(pair.depth_delta == 0);
        CHECK(pair.leaf_delta == 0);
        CHECK(pair.asymmetry_index == 0.0);
        CHECK(pair.leaves_l == 8);
    }
}

TEST_CASE("pruning an MCA_R subtree shows in the deltas") {
    SynthParams full;
    full.min_depth = full.max_depth = 3;
    full.branch_probability = 1.0;
    const auto p = classified(5, full);
    const SubTree* mca = p.network.tree(ArteryLabel::named(K::MCA, Side::Right));
    REQUIRE(mca);
    const auto& g = p.network.graph();
    // A depth-3 edge: its subtree has two leaves.
    EdgeId cut = 0;
    for (EdgeId e : mca->edges) {
        if (p.network.layer(e) == 3) {
            cut = e;
            break;
        }
    }
    REQUIRE(cut != 0);
    const int head = g.edge(cut).segment_ids.front();
    const auto pruned = remove_subtree(p.scan.forest, head);
    const auto net = network_of(pruned);
    const auto rep = symmetry_metrics(net);
    const auto& pair = rep.pairs[2];
    REQUIRE(pair.kind == K::MCA);
    CHECK(pair.leaf_delta == 2);
    CHECK(pair.asymmetry_index == doctest::Approx(2.0 / 14.0));

    const SubTree* after = net.tree(ArteryLabel::named(K::MCA, Side::Right));
    REQUIRE(after);
    const int head_root = net.graph().edge(after->root_edges.front()).segment_ids.front();
    const int oracle = forest_depth(pruned, head_root) + 1;
    CHECK(pair.depth_r == oracle);
    CHECK(pair.depth_delta == std::abs(pair.depth_l - oracle));
}

TEST_CASE("an absent tree gives sentinels for its pair only") {
    const auto p = classified(3);
    const SubTree* pca = p.network.tree(ArteryLabel::named(K::PCA, Side::Left));
    REQUIRE(pca);
    const std::set<EdgeId> drop(pca->edges.begin(), pca->edges.end());
    auto labels = p.network.labels();
    for (EdgeId e : drop) labels.erase(e);
    const LabeledNetwork net(without_edges(p.network.graph(), drop), labels);
    const auto rep = symmetry_metrics(net);
    CHECK_FALSE(rep.pairs[0].complete());
    CHECK(rep.pairs[0].missing == std::vector<std::string>{"PCA_L"});
    CHECK(rep.pairs[0].depth_l == -1);
    CHECK(rep.pairs[0].leaf_delta == -1);
    CHECK(rep.pairs[0].depth_r > 0);
    CHECK(rep.pairs[1].complete());
    CHECK(rep.pairs[2].complete());
}
