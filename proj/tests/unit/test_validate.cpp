#include <filesystem>
#include <fstream>

#include "cerebro/pipeline.hpp"
#include "cerebro/validate.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cerebro;
using cerebro::test::classified;
namespace fs = std::filesystem;

TEST_CASE("batch results do not depend on worker count") {
    const fs::path dir = fs::temp_directory_path() / "cerebro_validate_unit";
    fs::remove_all(dir);
    fs::create_directories(dir);
    for (std::uint64_t seed : {9u, 3u, 6u, 1u}) {
        std::ofstream(dir / ("s" + std::to_string(seed) + ".swc")) << serialize_swc(generate_synthetic_scan(seed).forest);
    }
    std::ofstream(dir / "loop.swc") << "1 3 0 0 0 1 2\n2 3 0 1 0 1 1\n";
    std::ofstream(dir / "notes.txt") << "ignored\n";
    const auto one = validate_batch(dir.string(), Settings{}, 1);
    const auto many = validate_batch(dir.string(), Settings{}, 4);
    fs::remove_all(dir);
    CHECK(one.to_json() == many.to_json());
    REQUIRE(one.total() == 5);
    CHECK(one.passed() == 4);
    CHECK(one.scans[0].file == "loop.swc");
    CHECK_FALSE(one.scans[0].loaded);
    CHECK(one.summary() == "4/5 pass");
}

TEST_CASE("ring check catches flattened arcs and lopsided extents") {
    const auto p = classified(2);
    const Settings s;
    auto scene = build_scene(p.network, s, "x");
    CHECK(check_ring(scene, p.network, 0.2).pass);
    CHECK(check_projections(scene, p.network).pass);

    auto flat = scene;
    for (auto& e : flat.edges) {
        if (e.label.kind != ArteryLabel::Kind::AComm) continue;
        e.path[0].p[1].y = e.path[0].p[2].y = s.layout.cow_baseline_y;
    }
    CHECK_FALSE(check_ring(flat, p.network, 0.2).pass);

    auto lopsided = scene;
    const double mid = s.layout.midline();
    for (auto& n : lopsided.nodes) {
        if (n.position.x > mid) n.position.x = mid + (n.position.x - mid) * 2.0;
    }
    CHECK_FALSE(check_ring(lopsided, p.network, 0.2).pass);
}

TEST_CASE("projection check catches missing and foreign polylines") {
    const auto p = classified(2);
    auto scene = build_scene(p.network, Settings{}, "x");
    auto missing = scene;
    missing.projections["top"].pop_back();
    CHECK_FALSE(check_projections(missing, p.network).pass);
    auto swapped = scene;
    std::swap(swapped.projections["front"][3].polyline, swapped.projections["front"][4].polyline);
    CHECK_FALSE(check_projections(swapped, p.network).pass);
}
