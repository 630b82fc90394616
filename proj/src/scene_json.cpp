#include "cerebro/scene_json.hpp"

#include "json.hpp"

namespace cerebro {

using json = nlohmann::ordered_json;

namespace {

json point(Vec2 p) { return json::array({p.x, p.y}); }

json config_json(const LayoutConfig& c) {
    return json{
        {"layer_height", c.layer_height},
        {"cow_baseline_y", c.cow_baseline_y},
        {"band_gutter", c.band_gutter},
        {"canvas_width", c.canvas_width},
        {"stroke_min", c.stroke_min},
        {"stroke_max", c.stroke_max},
        {"carotid_band_height", c.carotid_band_height},
        {"carotid_amplitude", c.carotid_amplitude},
        {"acomm_arc_rise", c.acomm_arc_rise},
        {"pcomm_arc_drop", c.pcomm_arc_drop},
        {"cow_ring_half_width", c.cow_ring_half_width},
        {"bend_noise_fraction", c.bend_noise_fraction},
        {"corpus_radius_lo", c.corpus_radius_lo},
        {"corpus_radius_hi", c.corpus_radius_hi},
    };
}

[[noreturn]] void mismatch(const std::string& what) { throw SchemaMismatch("scene schema: " + what); }

const json& field(const json& obj, const char* key) {
    if (!obj.is_object()) mismatch(std::string("expected an object holding '") + key + "'");
    const auto it = obj.find(key);
    if (it == obj.end()) mismatch(std::string("missing '") + key + "'");
    return *it;
}

double number(const json& obj, const char* key) {
    const json& v = field(obj, key);
    if (!v.is_number()) mismatch(std::string("'") + key + "' must be a number");
    return v.get<double>();
}

int integer(const json& obj, const char* key) {
    const json& v = field(obj, key);
    if (!v.is_number_integer()) mismatch(std::string("'") + key + "' must be an integer");
    return v.get<int>();
}

std::string text(const json& obj, const char* key) {
    const json& v = field(obj, key);
    if (!v.is_string()) mismatch(std::string("'") + key + "' must be a string");
    return v.get<std::string>();
}

const json& array(const json& obj, const char* key) {
    const json& v = field(obj, key);
    if (!v.is_array()) mismatch(std::string("'") + key + "' must be an array");
    return v;
}

Vec2 to_point(const json& v) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) mismatch("points are [x, y] pairs");
    return {v[0].get<double>(), v[1].get<double>()};
}

LayoutConfig config_from(const json& c) {
    LayoutConfig out;
    const std::pair<const char*, double*> fields[] = {
        {"layer_height", &out.layer_height},
        {"cow_baseline_y", &out.cow_baseline_y},
        {"band_gutter", &out.band_gutter},
        {"canvas_width", &out.canvas_width},
        {"stroke_min", &out.stroke_min},
        {"stroke_max", &out.stroke_max},
        {"carotid_band_height", &out.carotid_band_height},
        {"carotid_amplitude", &out.carotid_amplitude},
        {"acomm_arc_rise", &out.acomm_arc_rise},
        {"pcomm_arc_drop", &out.pcomm_arc_drop},
        {"cow_ring_half_width", &out.cow_ring_half_width},
        {"bend_noise_fraction", &out.bend_noise_fraction},
        {"corpus_radius_lo", &out.corpus_radius_lo},
        {"corpus_radius_hi", &out.corpus_radius_hi},
    };
    for (const auto& [key, dst] : fields) *dst = number(c, key);
    if (c.size() != std::size(fields)) mismatch("unexpected config keys");
    return out;
}

}  // namespace

std::string export_scene_json(const LayoutScene& scene) {
    json doc;
    doc["version"] = kSceneVersion;
    doc["scan_id"] = scene.scan_id;
    doc["config"] = config_json(scene.config);
    doc["radiusRange"] = json::array({scene.radius_lo, scene.radius_hi});
    json nodes = json::array();
    for (const auto& n : scene.nodes) {
        nodes.push_back(json{{"id", n.id}, {"x", n.position.x}, {"y", n.position.y}, {"depth", n.depth}});
    }
    doc["nodes"] = std::move(nodes);
    json edges = json::array();
    for (const auto& e : scene.edges) {
        json j;
        j["id"] = e.edge_id;
        j["label"] = e.label.name();
        j["side"] = side_code(e.label.side);
        j["dashed"] = e.dashed;
        j["strokeWidth"] = e.stroke_width;
        j["color"] = e.color.hex();
        if (e.flow) j["flow"] = *e.flow;
        json cps = json::array();
        for (std::size_t i = 0; i < e.path.size(); ++i) {
            if (i == 0) cps.push_back(point(e.path[i].p[0]));
            for (int k = 1; k < 4; ++k) cps.push_back(point(e.path[i].p[k]));
        }
        j["controlPoints"] = std::move(cps);
        j["segmentIds"] = e.segment_ids;
        if (e.connector) j["connector"] = true;
        edges.push_back(std::move(j));
    }
    doc["edges"] = std::move(edges);
    json proj = json::object();
    for (const char* view : {"front", "top", "side"}) {
        json list = json::array();
        if (const auto it = scene.projections.find(view); it != scene.projections.end()) {
            for (const auto& p : it->second) {
                json poly = json::array();
                for (const auto& q : p.polyline) poly.push_back(point(q));
                list.push_back(json{{"edgeId", p.edge_id}, {"polyline", std::move(poly)}});
            }
        }
        proj[view] = std::move(list);
    }
    doc["projections"] = std::move(proj);
    return doc.dump(2) + "\n";
}

LayoutScene import_scene_json(std::string_view source) {
    json doc;
    try {
        doc = json::parse(source.begin(), source.end());
    } catch (const json::parse_error& e) {
        throw MalformedScene(e.what());
    }
    if (!doc.is_object()) mismatch("document must be an object");
    const json& version = field(doc, "version");
    if (!version.is_number_integer() || version.get<int>() != kSceneVersion) {
        mismatch("version " + version.dump() + " is not " + std::to_string(kSceneVersion));
    }
    LayoutScene scene;
    scene.scan_id = text(doc, "scan_id");
    scene.config = config_from(field(doc, "config"));
    if (const auto it = doc.find("radiusRange"); it != doc.end()) {
        const Vec2 r = to_point(*it);
        scene.radius_lo = r.x;
        scene.radius_hi = r.y;
    }
    for (const auto& n : array(doc, "nodes")) {
        scene.nodes.push_back({integer(n, "id"), {number(n, "x"), number(n, "y")}, integer(n, "depth")});
    }
    for (const auto& j : array(doc, "edges")) {
        EdgePath e;
        e.edge_id = integer(j, "id");
        const auto label = ArteryLabel::parse(text(j, "label"));
        if (!label) mismatch("unknown label " + text(j, "label"));
        e.label = *label;
        if (text(j, "side") != side_code(label->side)) mismatch("side disagrees with label " + label->name());
        const json& dashed = field(j, "dashed");
        if (!dashed.is_boolean()) mismatch("'dashed' must be a boolean");
        e.dashed = dashed.get<bool>();
        e.stroke_width = number(j, "strokeWidth");
        const auto color = Rgb::parse_hex(text(j, "color"));
        if (!color) mismatch("bad color " + text(j, "color"));
        e.color = *color;
        if (j.contains("flow")) e.flow = number(j, "flow");
        const json& cps = array(j, "controlPoints");
        if (cps.size() < 4 || (cps.size() - 1) % 3 != 0) mismatch("controlPoints must hold 3n+1 points");
        for (std::size_t i = 0; i + 3 < cps.size(); i += 3) {
            e.path.push_back({{to_point(cps[i]), to_point(cps[i + 1]), to_point(cps[i + 2]), to_point(cps[i + 3])}});
        }
        for (const auto& s : array(j, "segmentIds")) {
            if (!s.is_number_integer()) mismatch("segment ids must be integers");
            e.segment_ids.push_back(s.get<int>());
        }
        if (j.contains("connector")) e.connector = field(j, "connector").get<bool>();
        scene.edges.push_back(std::move(e));
    }
    const json& proj = field(doc, "projections");
    for (const auto& view : projection_views()) {
        auto& list = scene.projections[view];
        for (const auto& p : array(proj, view.c_str())) {
            Projection out{integer(p, "edgeId"), {}};
            for (const auto& q : array(p, "polyline")) out.polyline.push_back(to_point(q));
            list.push_back(std::move(out));
        }
    }
    return scene;
}

}  // namespace cerebro
