// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "cerebro/analysis.hpp"
#include "cerebro/flow.hpp"
#include "cerebro/layout.hpp"
#include "cerebro/scene_json.hpp"
#include "cerebro/svg.hpp"
#include "cerebro/validate.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace cerebro;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

LabeledNetwork network_of(const SegmentForest& f) {
    return reconstruct_cow(classify_arteries_strict(contract_chains(f)));
}

LayoutScene scene_of(const LabeledNetwork& net, const std::string& id) {
    SceneOptions opts;
    opts.scan_id = id;
    return compose_scene(net, LayoutConfig{}, opts);
}

// 1. Robustness over the default 25-scan corpus.
Outcome robustness() {
    const fs::path dir = fs::temp_directory_path() / "cerebro_acceptance_corpus";
    fs::remove_all(dir);
    fs::create_directories(dir);
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        char name[32];
        std::snprintf(name, sizeof name, "scan_%03llu.swc", static_cast<unsigned long long>(seed));
        std::ofstream(dir / name) << serialize_swc(generate_synthetic_scan(seed).forest);
    }
    const auto t0 = std::chrono::steady_clock::now();
    const BatchReport report = validate_batch(dir.string(), Settings{});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    fs::remove_all(dir);
    std::ostringstream os;
    os << report.summary() << " on C1-C3 in " << secs << " s (limit 10 s)";
    for (const auto& s : report.scans) {
        if (!s.pass()) os << "; " << s.file << " failed" << (s.error.empty() ? "" : ": " + s.error);
    }
    return {report.passed() == 25 && report.total() == 25 && secs < 10.0, os.str()};
}

// 2. Layout invariants over randomized generator parameters.
Outcome layout_invariants() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int violations = 0;
    int errors = 0;
    std::string first;
    for (int i = 0; i < 200; ++i) {
        SynthParams p;
        p.min_depth = 1 + static_cast<int>(rng() % 3);
        p.max_depth = p.min_depth + static_cast<int>(rng() % 3);
        p.branch_probability = 0.5 + 0.5 * u(rng);
        p.taper = 0.6 + 0.3 * u(rng);
        p.noise = 0.05 * u(rng);
        const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(i);
        try {
            const auto net = network_of(generate_synthetic_scan(seed, p).forest);
            const auto msgs = check_layout(scene_of(net, "r"), net).all();
            violations += static_cast<int>(msgs.size());
            if (!msgs.empty() && first.empty()) first = "seed " + std::to_string(seed) + ": " + msgs.front();
        } catch (const std::exception& e) {
            ++errors;
            if (first.empty()) first = "seed " + std::to_string(seed) + ": " + e.what();
        }
    }
    std::string detail = std::to_string(violations) + " violations, " + std::to_string(errors) +
                         " pipeline errors over 200 scans";
    if (!first.empty()) detail += "; first: " + first;
    return {violations == 0 && errors == 0, detail};
}

// 3. Child ordering against the brute-force oracle.
Outcome ordering() {
    std::mt19937_64 rng(99);
    int nodes = 0;
    int mismatches = 0;
    for (int i = 0; i < 100; ++i) {
        const auto g = contract_chains(test::random_tree(rng, 64));
        for (const auto& [node, kids] : order_subtrees(test::whole_tree(g), g)) {
            ++nodes;
            if (kids != test::oracle_order(g, node)) ++mismatches;
        }
    }
    return {mismatches == 0 && nodes > 0,
            std::to_string(mismatches) + " mismatches at " + std::to_string(nodes) + " internal nodes of 100 trees"};
}

// 4. Flow conservation, locality, budget and the symmetric split.
Outcome flow_properties() {
    std::mt19937_64 rng(17);
    double worst_conservation = 0.0;
    double worst_budget = 0.0;
    long locality_breaks = 0;
    long checks = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto net = network_of(generate_synthetic_scan(seed).forest);
        const auto& g = net.graph();
        const auto base = compute_flow(net);
        std::vector<EdgeId> data;
        for (const auto& e : g.edges()) {
            if (!e.dashed) data.push_back(e.id);
        }
        for (int trial = 0; trial < 100; ++trial) {
            const EdgeId b = data[rng() % data.size()];
            const auto fa = compute_flow(net, {b});
            auto dead = g.descendants(b);
            dead.push_back(b);
            const std::set<EdgeId> dead_set(dead.begin(), dead.end());
            double budget = 0.0;
            for (EdgeId e : data) {
                ++checks;
                const double f = fa.at(e);
                if (dead_set.count(e) ? f != 0.0 : f != base.at(e)) ++locality_breaks;
                double kids = 0.0;
                bool leaf = true;
                for (EdgeId c : g.out_edges(g.edge(e).to)) {
                    if (g.edge(c).dashed) continue;
                    leaf = false;
                    kids += c == b ? fa.blocked_shares.at(b) : fa.at(c);
                }
                if (leaf) budget += f;
                if (!leaf && !dead_set.count(e)) worst_conservation = std::max(worst_conservation, std::abs(kids - f));
            }
            for (const auto& [_, s] : fa.blocked_shares) budget += s;
            worst_budget = std::max(worst_budget, std::abs(budget - 1.0));
        }
    }
    const auto sym = compute_flow(test::fork_network(1.5, 1.5));
    const bool half = sym.at(2) == 0.5 && sym.at(3) == 0.5;
    std::ostringstream os;
    os << "conservation max err " << worst_conservation << " (tol 1e-12), budget max err " << worst_budget
       << " (tol 1e-9), locality breaks " << locality_breaks << " of " << checks << ", symmetric split "
       << sym.at(2) << "/" << sym.at(3);
    return {worst_conservation <= 1e-12 && worst_budget <= 1e-9 && locality_breaks == 0 && half, os.str()};
}

// 5. Injected 70% stenosis is the top narrowing flag.
Outcome stenosis() {
    std::mt19937_64 rng(5);
    int hits = 0;
    std::string misses;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto net = network_of(generate_synthetic_scan(seed).forest);
        std::vector<EdgeId> cerebral;
        for (const auto& [_, t] : net.cerebral_trees()) cerebral.insert(cerebral.end(), t.edges.begin(), t.edges.end());
        const EdgeId target = cerebral[rng() % cerebral.size()];
        const auto narrowed = network_of(inject_stenosis(net.graph(), target, 0.7));
        const auto top = detect_width_outliers(narrowed).top_narrowing();
        if (top && top->edge_id == target) {
            ++hits;
        } else {
            misses += " seed " + std::to_string(seed);
        }
    }
    std::string detail = std::to_string(hits) + "/50 injected edges ranked top narrowing";
    if (!misses.empty()) detail += "; missed:" + misses;
    return {hits == 50, detail};
}

// 6. Bend counts.
Outcome bends() {
    using test::walk;
    const int siphon = count_bends(walk({{0, 0, 0}, {0, -10, 0}, {6, -10, 0}, {6, -40, 0}}));
    const int straight = count_bends(walk({{0, 0, 0}, {0, -30, 0}}));
    std::string wrong;
    for (int k = 1; k <= 10; ++k) {
        const int got = count_bends(test::zigzag(k));
        if (got != k) wrong += " k=" + std::to_string(k) + "->" + std::to_string(got);
    }
    std::string detail = "siphon " + std::to_string(siphon) + ", straight " + std::to_string(straight) +
                         ", alternations 1..10 " + (wrong.empty() ? "all match" : "mismatch:" + wrong);
    return {siphon == 3 && straight == 0 && wrong.empty(), detail};
}

// 7. Determinism and round trips.
Outcome determinism() {
    int failures = 0;
    std::string first;
    const auto fail = [&](std::uint64_t seed, const std::string& what) {
        ++failures;
        if (first.empty()) first = "seed " + std::to_string(seed) + ": " + what;
    };
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto scan = generate_synthetic_scan(seed);
        if (!(generate_synthetic_scan(seed).forest == scan.forest)) fail(seed, "generator differs");
        const std::string swc = serialize_swc(scan.forest);
        const auto reread = parse_swc(swc);
        if (!(reread == scan.forest) || serialize_swc(reread) != swc) fail(seed, "SWC round trip");

        const auto a = scene_of(network_of(scan.forest), "s");
        const auto b = scene_of(network_of(reread), "s");
        const std::string ja = export_scene_json(a);
        if (export_scene_json(b) != ja) fail(seed, "scene differs between runs");
        const auto back = import_scene_json(ja);
        if (export_scene_json(back) != ja) fail(seed, "scene JSON round trip");
        for (std::size_t i = 0; i < a.edges.size(); ++i) {
            for (std::size_t k = 0; k < a.edges[i].path.size(); ++k) {
                if (a.edges[i].path[k].p != back.edges[i].path[k].p) fail(seed, "control point changed in JSON");
            }
        }
        const std::string svg = render_svg(a, ColorScheme{});
        if (render_svg(b, ColorScheme{}) != svg || render_svg(back, ColorScheme{}) != svg) fail(seed, "SVG differs");
    }
    return {failures == 0, failures == 0 ? "20 scans: scenes, SWC, scene JSON and SVG identical"
                                         : std::to_string(failures) + " failures; first: " + first};
}

// 8. Mirror symmetry.
Outcome mirror() {
    double worst = 0.0;
    int label_errors = 0;
    int structure_errors = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto scan = generate_synthetic_scan(seed);
        const auto net = network_of(scan.forest);
        const auto mnet = network_of(mirror_lateral(scan.forest));
        for (const auto& [id, label] : net.labels()) {
            if (mnet.label(id) != mirrored(label)) ++label_errors;
        }
        const auto a = scene_of(net, "s");
        const auto b = scene_of(mnet, "s");
        const double mid2 = 2.0 * a.config.midline();
        if (a.edges.size() != b.edges.size() || a.nodes.size() != b.nodes.size()) {
            ++structure_errors;
            continue;
        }
        for (const auto& e : a.edges) {
            const EdgePath* m = b.edge(e.edge_id);
            if (!m || m->path.size() != e.path.size()) {
                ++structure_errors;
                continue;
            }
            // Ring edges are undirected: the mirror of an edge stored left to
            // right is the same curve stored right to left.
            const auto deviation = [&](bool reversed) {
                double d = 0.0;
                const std::size_t n = e.path.size();
                for (std::size_t k = 0; k < n; ++k) {
                    for (int j = 0; j < 4; ++j) {
                        const Vec2 q = reversed ? m->path[n - 1 - k].p[3 - j] : m->path[k].p[j];
                        d = std::max(d, std::abs(mid2 - e.path[k].p[j].x - q.x));
                        d = std::max(d, std::abs(e.path[k].p[j].y - q.y));
                    }
                }
                return d;
            };
            double d = deviation(false);
            if (net.role(e.edge_id) == EdgeRole::Ring) d = std::min(d, deviation(true));
            worst = std::max(worst, d);
        }
        for (const auto& n : a.nodes) {
            const SceneNode* m = b.node(n.id);
            if (!m) {
                ++structure_errors;
                continue;
            }
            worst = std::max(worst, std::abs(mid2 - n.position.x - m->position.x));
            worst = std::max(worst, std::abs(n.position.y - m->position.y));
        }
    }
    std::ostringstream os;
    os << "50 scans: " << label_errors << " unswapped labels, " << structure_errors
       << " structural mismatches, max mirror deviation " << worst << " px (tol 1e-9)";
    return {label_errors == 0 && structure_errors == 0 && worst <= 1e-9, os.str()};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"robustness suite", robustness},
        {"layout invariants", layout_invariants},
        {"ordering oracle", ordering},
        {"flow properties", flow_properties},
        {"stenosis loop", stenosis},
        {"bend counts", bends},
        {"determinism and round trips", determinism},
        {"mirror symmetry", mirror},
    };
    int failed = 0;
    int n = 0;
    for (const auto& [name, run] : criteria) {
        ++n;
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria pass\n", n - failed, n);
    return failed == 0 ? 0 : 1;
}
