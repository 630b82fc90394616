#include "cerebro/validate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <thread>

#include "cerebro/pipeline.hpp"
#include "cerebro/scene_json.hpp"
#include "json.hpp"

namespace cerebro {

namespace fs = std::filesystem;

CriterionResult check_ring(const LayoutScene& scene, const LabeledNetwork& network, double extent_tolerance) {
    CriterionResult r;
    auto& d = r.diagnostics;
    const double base = scene.config.cow_baseline_y;
    const double mid = scene.config.midline();
    if (!network.ring_closed()) d.push_back("ring is not closed");
    const auto& cycle = network.cow_cycle();
    const VesselGraph& g = network.graph();
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const EdgePath* p = scene.edge(cycle[i]);
        if (!p) {
            d.push_back("ring edge " + std::to_string(cycle[i]) + " is not drawn");
            continue;
        }
        const auto& e = g.edge(cycle[i]);
        const SceneNode* a = scene.node(e.from);
        const SceneNode* b = scene.node(e.to);
        if (!a || !b || (p->start() - a->position).norm() > 1e-9 || (p->end() - b->position).norm() > 1e-9) {
            d.push_back("ring edge " + std::to_string(cycle[i]) + " does not meet its nodes");
        }
        const auto section = network.ring_section(cycle[i]);
        const double apex = p->path.front().at(0.5).y;
        if (section == RingSection::AComm && !(apex < base)) d.push_back("A. Comm. does not arc upward");
        if (section == RingSection::PComm && !(apex > base)) {
            d.push_back("P. Comm. edge " + std::to_string(cycle[i]) + " does not arc downward");
        }
    }
    if (!network.ring().acomm) d.push_back("no A. Comm.");
    double left = 0.0;
    double right = 0.0;
    for (EdgeId id : cycle) {
        const auto& e = g.edge(id);
        for (NodeId n : {e.from, e.to}) {
            if (const SceneNode* s = scene.node(n)) {
                left = std::max(left, mid - s->position.x);
                right = std::max(right, s->position.x - mid);
            }
        }
    }
    const double wide = std::max(left, right);
    if (!(wide > 0.0) || std::abs(left - right) > extent_tolerance * wide) {
        std::ostringstream os;
        os << "ring extents differ: left " << left << " px, right " << right << " px";
        d.push_back(os.str());
    }
    r.pass = d.empty();
    return r;
}

CriterionResult check_invariants(const LayoutScene& scene, const LabeledNetwork& network) {
    CriterionResult r;
    r.diagnostics = check_layout(scene, network).all();
    r.pass = r.diagnostics.empty();
    return r;
}

CriterionResult check_projections(const LayoutScene& scene, const LabeledNetwork& network) {
    CriterionResult r;
    auto& d = r.diagnostics;
    const VesselGraph& g = network.graph();
    const SegmentForest& f = *g.forest();
    for (const auto& view : projection_views()) {
        const auto it = scene.projections.find(view);
        if (it == scene.projections.end()) {
            d.push_back("missing " + view + " projection");
            continue;
        }
        std::map<EdgeId, const Projection*> by_id;
        for (const auto& p : it->second) {
            if (!by_id.emplace(p.edge_id, &p).second) {
                d.push_back(view + ": edge " + std::to_string(p.edge_id) + " has several polylines");
            }
        }
        std::size_t drawn = 0;
        for (const auto& e : scene.edges) {
            if (e.dashed) {
                if (by_id.count(e.edge_id)) d.push_back(view + ": dashed edge " + std::to_string(e.edge_id) + " projected");
                continue;
            }
            ++drawn;
            const auto pit = by_id.find(e.edge_id);
            if (pit == by_id.end()) {
                d.push_back(view + ": edge " + std::to_string(e.edge_id) + " has no polyline");
                continue;
            }
            if (!g.has_edge(e.edge_id) || g.edge(e.edge_id).segment_ids != e.segment_ids || e.segment_ids.empty()) {
                d.push_back("edge " + std::to_string(e.edge_id) + " segment ids disagree with the graph");
                continue;
            }
            // The polyline must be the projection of the edge's own segments,
            // preceded by its start node unless the edge begins at the root.
            const auto& poly = pit->second->polyline;
            const std::size_t off = f.record(e.segment_ids.front()).parent_id == -1 ? 0 : 1;
            bool same = poly.size() == e.segment_ids.size() + off;
            for (std::size_t i = 0; same && i < e.segment_ids.size(); ++i) {
                const Vec3 q = f.record(e.segment_ids[i]).position;
                const Vec2 want = view == "front" ? Vec2{q.x, q.y} : view == "side" ? Vec2{q.z, q.y} : Vec2{q.x, q.z};
                same = poly[i + off] == want;
            }
            if (!same) d.push_back(view + ": polyline of edge " + std::to_string(e.edge_id) + " is not its segments");
        }
        if (by_id.size() != drawn) d.push_back(view + ": polyline count differs from drawn edge count");
    }
    r.pass = d.empty();
    return r;
}

ScanReport validate_scan(const std::string& path, const Settings& settings) {
    ScanReport rep;
    rep.file = fs::path(path).filename().string();
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const LabeledNetwork net = load_network(path, settings);
        // Check the scene the dashboard would receive.
        const LayoutScene scene = import_scene_json(export_scene_json(build_scene(net, settings, scan_id_of(path))));
        rep.loaded = true;
        rep.c1 = check_ring(scene, net, settings.ring_extent_tolerance);
        rep.c2 = check_invariants(scene, net);
        rep.c3 = check_projections(scene, net);
    } catch (const SwcError& e) {
        rep.error_kind = to_string(e.kind());
        rep.error = e.what();
    } catch (const ClassificationFailed& e) {
        rep.error_kind = "ClassificationFailed";
        rep.error = e.what();
    } catch (const CannotClose& e) {
        rep.error_kind = "CannotClose";
        rep.error = e.what();
    } catch (const std::exception& e) {
        rep.error_kind = "Error";
        rep.error = e.what();
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

BatchReport validate_batch(const std::string& dir, const Settings& settings, unsigned threads) {
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".swc") files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());
    BatchReport out;
    out.scans.resize(files.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, std::max<std::size_t>(1, files.size()));
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < files.size(); i = next++) out.scans[i] = validate_scan(files[i], settings);
    };
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return out;
}

int BatchReport::passed() const {
    return static_cast<int>(std::count_if(scans.begin(), scans.end(), [](const ScanReport& s) { return s.pass(); }));
}

std::string BatchReport::summary() const { return std::to_string(passed()) + "/" + std::to_string(total()) + " pass"; }

std::string BatchReport::to_json() const {
    using json = nlohmann::ordered_json;
    const auto criterion = [](const CriterionResult& c) {
        return json{{"pass", c.pass}, {"diagnostics", c.diagnostics}};
    };
    json scans_json = json::array();
    for (const auto& s : scans) {
        json j{{"file", s.file}, {"pass", s.pass()}};
        if (!s.loaded) {
            j["error"] = json{{"kind", s.error_kind}, {"message", s.error}};
        } else {
            j["C1"] = criterion(s.c1);
            j["C2"] = criterion(s.c2);
            j["C3"] = criterion(s.c3);
        }
        scans_json.push_back(std::move(j));
    }
    json doc{{"summary", summary()}, {"passed", passed()}, {"total", total()}, {"scans", std::move(scans_json)}};
    return doc.dump(2) + "\n";
}

std::string BatchReport::to_text() const {
    std::ostringstream os;
    for (const auto& s : scans) {
        os << (s.pass() ? "PASS " : "FAIL ") << s.file;
        if (!s.loaded) {
            os << "  " << s.error_kind << ": " << s.error;
        } else if (!s.pass()) {
            for (const auto* c : {&s.c1, &s.c2, &s.c3}) {
                for (const auto& m : c->diagnostics) os << "\n    " << m;
            }
        }
        os << "\n";
    }
    os << summary() << "\n";
    return os.str();
}

}  // namespace cerebro
