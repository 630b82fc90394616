#include <regex>

#include "cerebro/flow.hpp"
#include "cerebro/scene_json.hpp"
#include "cerebro/svg.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

using namespace cerebro;
using cerebro::test::classified;
using K = ArteryLabel::Kind;

namespace {

LayoutScene scene_of(std::uint64_t seed, bool with_flow = false) {
    const auto p = classified(seed);
    SceneOptions opts;
    opts.scan_id = "scan_" + std::to_string(seed);
    if (with_flow) opts.flow = compute_flow(p.network).flows;
    return compose_scene(p.network, LayoutConfig{}, opts);
}

int count(const std::string& hay, const std::string& needle) {
    int n = 0;
    for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("categorical palette follows the hue and saturation rules") {
    const ColorScheme scheme;
    CHECK(color_for_edge(ArteryLabel::named(K::PComm, Side::Left), scheme).hex() == "#d0342c");
    for (Side s : {Side::Left, Side::Right}) {
        const auto aca = rgb_to_hsl(color_for_edge(ArteryLabel::named(K::ACA, s), scheme));
        const auto mca = rgb_to_hsl(color_for_edge(ArteryLabel::named(K::MCA, s), scheme));
        const auto pca = rgb_to_hsl(color_for_edge(ArteryLabel::named(K::PCA, s), scheme));
        CHECK(aca.h == doctest::Approx(mca.h).epsilon(0.02));
        CHECK(aca.h == doctest::Approx(pca.h).epsilon(0.02));
        CHECK(aca.s > mca.s);
        CHECK(mca.s > pca.s);
    }
    ColorScheme bw;
    bw.mode = ColorMode::BlackWhite;
    const Rgb one = color_for_edge(ArteryLabel::ba(), bw);
    for (K k : {K::IC, K::PComm, K::PCA, K::MCA, K::ACA}) {
        CHECK(color_for_edge(ArteryLabel::named(k, Side::Right), bw) == one);
    }
}

TEST_CASE("flow ramp runs from white to the base color") {
    const Rgb base{40, 100, 200};
    CHECK(flow_color(0.0, 0.8, base) == Rgb{255, 255, 255});
    CHECK(flow_color(0.8, 0.8, base) == base);
    const Rgb half = flow_color(0.4, 0.8, base);
    CHECK(std::abs(half.r - (255 + 40) / 2.0) <= 0.5);
    CHECK(std::abs(half.g - (255 + 100) / 2.0) <= 0.5);
    CHECK(std::abs(half.b - (255 + 200) / 2.0) <= 0.5);
}

TEST_CASE("hex colors round trip") {
    for (const Rgb c : {Rgb{0, 0, 0}, Rgb{255, 255, 255}, Rgb{0xd0, 0x34, 0x2c}}) CHECK(Rgb::parse_hex(c.hex()) == c);
    CHECK_FALSE(Rgb::parse_hex("d0342c"));
    CHECK_FALSE(Rgb::parse_hex("#d0342g"));
}

TEST_CASE("svg has one path per edge with matching ids") {
    const auto scene = scene_of(4);
    const std::string svg = render_svg(scene, ColorScheme{});
    CHECK(count(svg, "<path ") == static_cast<int>(scene.edges.size()));
    for (const auto& e : scene.edges) {
        const std::string tag = "id=\"edge-" + std::to_string(e.edge_id) + "\" data-edge-id=\"" +
                                std::to_string(e.edge_id) + "\"";
        CHECK(count(svg, tag) == 1);
    }
    const std::regex dashed("<path [^>]*data-label=\"AComm\"[^>]*stroke-dasharray=");
    CHECK(std::regex_search(svg, dashed));
    CHECK(count(svg, "stroke-dasharray") ==
          std::count_if(scene.edges.begin(), scene.edges.end(), [](const EdgePath& e) { return e.dashed; }));
    CHECK(svg == render_svg(scene, ColorScheme{}));
}

TEST_CASE("flow mode without flow values falls back to categorical") {
    const auto scene = scene_of(4);
    ColorScheme flow;
    flow.mode = ColorMode::Flow;
    std::vector<std::string> warnings;
    const auto svg = render_svg(scene, flow, {}, &warnings);
    CHECK(warnings.size() == 1);
    CHECK(svg == render_svg(scene, ColorScheme{}));
    warnings.clear();
    render_svg(scene_of(4, true), flow, {}, &warnings);
    CHECK(warnings.empty());
}

TEST_CASE("scene JSON round trips losslessly") {
    for (bool with_flow : {false, true}) {
        const auto scene = scene_of(6, with_flow);
        const std::string text = export_scene_json(scene);
        const auto back = import_scene_json(text);
        CHECK(export_scene_json(back) == text);
        REQUIRE(back.edges.size() == scene.edges.size());
        for (std::size_t i = 0; i < scene.edges.size(); ++i) {
            const auto& a = scene.edges[i];
            const auto& b = back.edges[i];
            CHECK(a.edge_id == b.edge_id);
            CHECK(a.label == b.label);
            CHECK(a.flow == b.flow);
            CHECK(a.stroke_width == b.stroke_width);
            CHECK(a.connector == b.connector);
            REQUIRE(a.path.size() == b.path.size());
            for (std::size_t k = 0; k < a.path.size(); ++k) CHECK(a.path[k].p == b.path[k].p);
        }
        REQUIRE(back.nodes.size() == scene.nodes.size());
        for (std::size_t i = 0; i < scene.nodes.size(); ++i) CHECK(back.nodes[i].position == scene.nodes[i].position);
        CHECK(back.projections.at("front").size() == scene.projections.at("front").size());
    }
}

TEST_CASE("scene JSON keeps the fixed key order and echoes the invariants") {
    const auto scene = scene_of(2);
    const auto doc = nlohmann::ordered_json::parse(export_scene_json(scene));
    std::vector<std::string> keys;
    for (const auto& [k, _] : doc.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"version", "scan_id", "config", "radiusRange", "nodes", "edges",
                                           "projections"});
    std::vector<std::string> ek;
    for (const auto& [k, _] : doc["edges"][0].items()) ek.push_back(k);
    CHECK(ek == std::vector<std::string>{"id", "label", "side", "dashed", "strokeWidth", "color", "controlPoints",
                                         "segmentIds"});
    std::set<int> drawn;
    for (const auto& e : doc["edges"]) {
        CHECK(e["segmentIds"].empty() == e["dashed"].get<bool>());
        if (!e["dashed"].get<bool>()) drawn.insert(e["id"].get<int>());
    }
    for (const char* view : {"front", "top", "side"}) {
        std::set<int> ids;
        for (const auto& p : doc["projections"][view]) ids.insert(p["edgeId"].get<int>());
        CHECK(ids == drawn);
    }
}

TEST_CASE("scene import reports schema problems") {
    const auto text = export_scene_json(scene_of(2));
    auto doc = nlohmann::ordered_json::parse(text);
    doc["version"] = 2;
    CHECK_THROWS_AS(import_scene_json(doc.dump()), SchemaMismatch);
    doc = nlohmann::ordered_json::parse(text);
    doc["edges"][0].erase("controlPoints");
    CHECK_THROWS_AS(import_scene_json(doc.dump()), SchemaMismatch);
    doc = nlohmann::ordered_json::parse(text);
    doc["config"]["extra"] = 1;
    CHECK_THROWS_AS(import_scene_json(doc.dump()), SchemaMismatch);
    CHECK_THROWS_AS(import_scene_json("{not json"), MalformedScene);
}
