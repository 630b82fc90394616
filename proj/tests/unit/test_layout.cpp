#include <algorithm>
#include <cmath>
#include <random>

#include "cerebro/layout.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

using namespace cerebro;
using cerebro::test::classified;
using cerebro::test::walk;
using cerebro::test::oracle_order;
using cerebro::test::random_tree;
using cerebro::test::whole_tree;
using K = ArteryLabel::Kind;

namespace {

double band_width(const Band& b) { return b.hi - b.lo; }

}  // namespace

TEST_CASE("child order matches the brute-force oracle on random trees") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        CAPTURE(trial);
        const auto g = contract_chains(random_tree(rng, 64));
        const auto order = order_subtrees(whole_tree(g), g);
        for (const auto& [node, kids] : order) CHECK(kids == oracle_order(g, node));
    }
}

TEST_CASE("subtree mass beats the position of the first child") {
    // The first child leaves to the right but its subtree sweeps far left.
    std::vector<Vec3> trunk = walk({{0, 0, 0}, {0, 4, 0}});
    std::vector<SwcRecord> r;
    for (std::size_t i = 0; i < trunk.size(); ++i) {
        r.push_back({static_cast<int>(i) + 1, 3, trunk[i], 1.0, i == 0 ? -1 : static_cast<int>(i)});
    }
    const int fork = static_cast<int>(r.size());
    auto add = [&](int parent, const std::vector<Vec3>& pts) {
        int prev = parent;
        for (std::size_t i = 1; i < pts.size(); ++i) {
            const int id = static_cast<int>(r.size()) + 1;
            r.push_back({id, 3, pts[i], 1.0, prev});
            prev = id;
        }
    };
    add(fork, walk({{0, 4, 0}, {1, 5, 0}, {-9, 12, 0}}));
    add(fork, walk({{0, 4, 0}, {-1, 5, 0}, {3, 12, 0}}));
    const auto g = contract_chains(SegmentForest(r));
    const auto order = order_subtrees(whole_tree(g), g);
    const auto& kids = order.at(g.edge(1).to);
    REQUIRE(kids.size() == 2);
    CHECK(kids[0] == 2);
    CHECK(kids[1] == 3);
    CHECK(kids == oracle_order(g, g.edge(1).to));
}

TEST_CASE("equal trees get equal, mirror-symmetric bands") {
    const auto p = classified(3);
    LayoutConfig cfg;
    auto slots = assign_slots(p.network, cfg);
    // Force equal leaf counts by comparing the unit-normalized widths.
    for (const auto& b : slots.bands) {
        CHECK(band_width(b) == doctest::Approx(slots.unit * b.leaves));
        const double inner = b.side == Side::Left ? cfg.midline() - b.hi : b.lo - cfg.midline();
        CHECK(inner >= cfg.band_gutter - 1e-9);
    }
    const auto m = reconstruct_cow(classify_arteries_strict(contract_chains(mirror_lateral(p.scan.forest))));
    const auto ms = assign_slots(m, cfg);
    for (const auto& b : slots.bands) {
        if (!b.label.is_cerebral_tree()) continue;
        const Band* o = ms.band(mirrored(b.label));
        REQUIRE(o);
        CHECK(o->lo == doctest::Approx(2 * cfg.midline() - b.hi).epsilon(1e-12));
        CHECK(o->hi == doctest::Approx(2 * cfg.midline() - b.lo).epsilon(1e-12));
    }
}

TEST_CASE("band widths are proportional to leaf counts") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto p = classified(seed);
        const auto slots = assign_slots(p.network, LayoutConfig{});
        for (const auto& a : slots.bands) {
            for (const auto& b : slots.bands) {
                CHECK(band_width(a) * b.leaves == doctest::Approx(band_width(b) * a.leaves));
            }
        }
        for (Side s : {Side::Left, Side::Right}) {
            const Band* pca = slots.band(ArteryLabel::named(K::PCA, s));
            const Band* aca = slots.band(ArteryLabel::named(K::ACA, s));
            const Band* mca = slots.band(ArteryLabel::named(K::MCA, s));
            REQUIRE((pca && aca && mca));
            const double sg = s == Side::Left ? -1 : 1;
            const auto inner = [&](const Band* b) { return sg * ((s == Side::Left ? b->hi : b->lo) - 600.0); };
            CHECK(inner(pca) < inner(aca));
            CHECK(inner(aca) < inner(mca));
        }
    }
}

TEST_CASE("tree nodes sit on their layer lines") {
    const auto p = classified(5);
    LayoutConfig cfg;
    const auto scene = compose_scene(p.network, cfg);
    for (const auto& n : scene.nodes) {
        if (n.depth < 0) continue;
        CHECK(n.position.y == doctest::Approx(cfg.cow_baseline_y - n.depth * cfg.layer_height).epsilon(1e-12));
    }
}

TEST_CASE("synthetic scans lay out without violations") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        CAPTURE(seed);
        const auto p = classified(seed);
        const auto scene = compose_scene(p.network, LayoutConfig{});
        const auto check = check_layout(scene, p.network);
        for (const auto& m : check.all()) FAIL_CHECK(m);
        CHECK(scene.edges.size() == p.network.graph().edges().size());
    }
}

TEST_CASE("every edge gets exactly one path and projections skip dashed edges") {
    const auto p = classified(11);
    const auto scene = compose_scene(p.network, LayoutConfig{});
    std::set<EdgeId> ids;
    int dashed = 0;
    for (const auto& e : scene.edges) {
        CHECK(ids.insert(e.edge_id).second);
        dashed += e.dashed;
        CHECK_FALSE(e.path.empty());
    }
    for (const auto& view : projection_views()) {
        CHECK(scene.projections.at(view).size() == scene.edges.size() - dashed);
    }
}

TEST_CASE("crossing edges are caught by the planarity check") {
    const auto p = classified(4);
    auto scene = compose_scene(p.network, LayoutConfig{});
    const SubTree* mca = p.network.tree(ArteryLabel::named(K::MCA, Side::Left));
    REQUIRE(mca);
    REQUIRE(mca->root_edges.size() == 1);
    const auto kids = p.network.graph().out_edges(p.network.graph().edge(mca->root_edges[0]).to);
    REQUIRE(kids.size() == 2);
    // Swap the endpoints of the two children so their paths cross.
    auto* a = const_cast<EdgePath*>(scene.edge(kids[0]));
    auto* b = const_cast<EdgePath*>(scene.edge(kids[1]));
    std::swap(a->path.back().p[3], b->path.back().p[3]);
    std::swap(a->path.back().p[2], b->path.back().p[2]);
    CHECK_FALSE(check_layout(scene, p.network).planarity.empty());
}

TEST_CASE("inflow arc length follows chain length") {
    LayoutConfig cfg;
    const auto a = inflow_curve({0, 0}, 50.0, 3, 1, cfg);
    const auto b = inflow_curve({0, 0}, 100.0, 3, 1, cfg);
    double la = 0, lb = 0;
    for (const auto& c : a) la += arc_length(c);
    for (const auto& c : b) lb += arc_length(c);
    CHECK(lb / la == doctest::Approx(2.0).epsilon(0.02));
    CHECK(la == doctest::Approx(50.0).epsilon(1e-6));
    CHECK(a.size() == 3);
    CHECK(inflow_curve({0, 0}, 40.0, 0, 0, cfg).size() == 1);
    // Alternating lateral direction.
    CHECK(a[0].p[1].x > 0);
    CHECK(a[1].p[1].x < 0);
}

TEST_CASE("inflow chains stack below the ring") {
    const auto p = classified(8);
    LayoutConfig cfg;
    const auto scene = compose_scene(p.network, cfg);
    for (const auto& [label, chain] : p.network.inflow()) {
        double total = 0;
        for (EdgeId id : chain) {
            const EdgePath* e = scene.edge(id);
            REQUIRE(e);
            for (const auto& c : e->path) total += arc_length(c);
            CHECK(std::max(e->start().y, e->end().y) > cfg.cow_baseline_y);
        }
        CHECK(total <= cfg.carotid_band_height * (1 + 1e-6));
    }
}

TEST_CASE("stroke widths map the radius range onto the width range") {
    const auto p = classified(2);
    LayoutConfig cfg;
    const auto w = scale_widths(p.network, cfg);
    double lo = 1e9, hi = -1e9;
    for (const auto& e : p.network.graph().edges()) {
        if (e.dashed) continue;
        lo = std::min(lo, e.mean_radius);
        hi = std::max(hi, e.mean_radius);
    }
    for (const auto& e : p.network.graph().edges()) {
        if (e.dashed) continue;
        if (e.mean_radius == lo) CHECK(w.widths.at(e.id) == doctest::Approx(cfg.stroke_min));
        if (e.mean_radius == hi) CHECK(w.widths.at(e.id) == doctest::Approx(cfg.stroke_max));
        CHECK(w.widths.at(e.id) ==
              doctest::Approx(cfg.stroke_min + (e.mean_radius - lo) / (hi - lo) * (cfg.stroke_max - cfg.stroke_min)));
    }
    LayoutConfig fixed = cfg;
    fixed.corpus_radius_lo = 100;
    fixed.corpus_radius_hi = 200;
    for (const auto& [_, v] : scale_widths(p.network, fixed).widths) CHECK(v == cfg.stroke_min);
}

TEST_CASE("uniform radii give the midpoint width") {
    auto g = contract_chains(test::chain_forest(walk({{0, 0, 0}, {0, 5, 0}})));
    std::map<EdgeId, ArteryLabel> labels{{1, ArteryLabel::ba()}};
    // A lone basilar chain is enough for the width scale.
    LabeledNetwork net(g, labels);
    const auto w = scale_widths(net, LayoutConfig{});
    CHECK(w.widths.at(1) == doctest::Approx(6.5));
}

TEST_CASE("ring lies on the baseline with the basilar tip on the midline") {
    const auto p = classified(6);
    LayoutConfig cfg;
    const auto ring = layout_cow(p.network, cfg);
    const NodeId b = *p.network.ring().ba_bifurcation;
    CHECK(ring.positions.at(b).x == cfg.midline());
    for (const auto& [n, pos] : ring.positions) CHECK(pos.y == cfg.cow_baseline_y);
    const EdgePath* acomm = nullptr;
    for (const auto& e : ring.paths) {
        if (e.label.kind == K::AComm) acomm = &e;
    }
    REQUIRE(acomm);
    CHECK(acomm->dashed);
    CHECK(acomm->path[0].at(0.5).y < cfg.cow_baseline_y);
}

TEST_CASE("layout config rejects out-of-range values") {
    LayoutConfig cfg;
    cfg.layer_height = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.stroke_min = 20;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
