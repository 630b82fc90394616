// cerebrovis: SWC scans to abstract cerebral artery network scenes.
//
// Exit status: 0 ok, 1 input error, 2 classification failure, 3 scene schema
// mismatch, 64 usage or configuration error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cerebro/analysis.hpp"
#include "cerebro/flow.hpp"
#include "cerebro/pipeline.hpp"
#include "cerebro/scene_json.hpp"
#include "cerebro/svg.hpp"
#include "cerebro/synth.hpp"
#include "cerebro/validate.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace cerebro;
using json = nlohmann::ordered_json;

namespace {

enum Status { kOk = 0, kInput = 1, kClassify = 2, kSchema = 3, kUsage = 64 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty() || out_path == "-") {
        std::cout << payload;
        std::cout.flush();
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw InputError("cannot write " + out_path);
    out << payload;
    if (!out) throw InputError("cannot write " + out_path);
}

struct Common {
    std::string config_path;
    std::vector<std::string> sets;

    // Flag values set by a subcommand, applied with the --set entries.
    std::map<std::string, std::string> extra;

    Settings resolve() const {
        std::map<std::string, std::string> file;
        if (!config_path.empty()) file = parse_config_text(read_file(config_path));
        std::map<std::string, std::string> flags;
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
            flags[s.substr(0, eq)] = s.substr(eq + 1);
        }
        for (const auto& [k, v] : extra) flags[k] = v;
        return resolve_settings(file, settings_from_env(process_environment()), flags);
    }
};

std::string swc_context(const SwcError& e, const std::string& path) {
    std::string msg = path;
    if (e.line() > 0) msg += ":" + std::to_string(e.line());
    return msg + ": " + to_string(e.kind()) + ": " + e.what();
}

int run_layout(const Common& c, const std::string& input, const std::string& labels, const std::string& out) {
    const Settings s = c.resolve();
    std::optional<std::string> overrides;
    if (!labels.empty()) overrides = read_file(labels);
    const auto net = load_network(input, s, overrides);
    emit(out, export_scene_json(build_scene(net, s, scan_id_of(input))));
    return kOk;
}

int run_render(const Common& c, const std::string& input, const std::string& out, bool legend) {
    const Settings s = c.resolve();
    const LayoutScene scene = import_scene_json(read_file(input));
    std::vector<std::string> warnings;
    SvgOptions opts;
    opts.legend = legend;
    const std::string svg = render_svg(scene, s.scheme, opts, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    emit(out, svg);
    return kOk;
}

int run_flow(const Common& c, const std::string& input, const std::vector<std::string>& blocks,
             const std::string& out) {
    Settings s = c.resolve();
    const auto net = load_network(input, s);
    std::set<EdgeId> blocked;
    for (const auto& b : blocks) {
        const auto ids = resolve_edge_target(net, b);
        blocked.insert(ids.begin(), ids.end());
    }
    const auto fa = compute_flow(net, blocked, s.flow);
    emit(out, export_scene_json(build_scene(net, s, scan_id_of(input), fa)));
    return kOk;
}

int run_inject(const Common& c, const std::string& input, const std::string& edge, double severity,
               const std::string& out) {
    if (!(severity > 0.0 && severity < 1.0)) throw UsageError("--severity must lie in (0, 1)");
    const Settings s = c.resolve();
    const SegmentForest raw = load_swc(input);
    // Edge ids do not depend on the axis convention; labels do.
    const auto net = build_network(apply_axis_map(raw, s.axes), s);
    const EdgeId target = *resolve_edge_target(net, edge).begin();
    const SegmentForest narrowed = inject_stenosis(contract_chains(raw), target, severity);
    std::ostringstream header;
    header << "stenosis severity " << severity << " on edge " << target << " (" << net.label(target).name() << ")";
    emit(out, serialize_swc(narrowed, header.str()));
    return kOk;
}

int run_metrics(const Common& c, const std::string& input, const std::string& out) {
    const Settings s = c.resolve();
    const auto net = load_network(input, s);
    json pairs = json::array();
    for (const auto& p : symmetry_metrics(net).pairs) {
        json j{{"pair", ArteryLabel::named(p.kind, Side::Left).name().substr(0, 3)},
               {"depth_l", p.depth_l},
               {"depth_r", p.depth_r},
               {"leaves_l", p.leaves_l},
               {"leaves_r", p.leaves_r},
               {"depth_delta", p.depth_delta},
               {"leaf_delta", p.leaf_delta},
               {"asymmetry_index", p.asymmetry_index}};
        if (!p.complete()) j["missing"] = p.missing;
        pairs.push_back(std::move(j));
    }
    json outliers = json::array();
    for (const auto& o : detect_width_outliers(net, s.outliers).entries) {
        outliers.push_back(json{{"edgeId", o.edge_id},
                                {"label", net.label(o.edge_id).name()},
                                {"kind", to_string(o.kind)},
                                {"taperRatio", o.taper_ratio}});
    }
    const json doc{{"scan_id", scan_id_of(input)}, {"symmetry", std::move(pairs)}, {"outliers", std::move(outliers)}};
    emit(out, doc.dump(2) + "\n");
    return kOk;
}

int run_validate(const Common& c, const std::string& dir, const std::string& out, unsigned threads) {
    const Settings s = c.resolve();
    if (!fs::is_directory(dir)) throw InputError(dir + " is not a directory");
    const BatchReport report = validate_batch(dir, s, threads);
    std::cerr << report.to_text();
    emit(out, report.to_json());
    return report.all_pass() ? kOk : kInput;
}

int run_gen(std::uint64_t seed, const std::string& out, int count, const std::string& dir, const SynthParams& p) {
    if (count < 1) throw UsageError("--count must be positive");
    if (!(p.taper > 0.0 && p.taper <= 1.0) || p.noise < 0.0 || p.noise > 0.2 || p.min_depth < 1 ||
        p.max_depth < p.min_depth || p.max_depth > 8) {
        throw UsageError("generator parameters out of range");
    }
    if (!dir.empty()) {
        fs::create_directories(dir);
        for (int i = 0; i < count; ++i) {
            const std::uint64_t sd = seed + static_cast<std::uint64_t>(i);
            char name[32];
            std::snprintf(name, sizeof name, "scan_%03llu.swc", static_cast<unsigned long long>(sd));
            const auto scan = generate_synthetic_scan(sd, p);
            emit((fs::path(dir) / name).string(), serialize_swc(scan.forest, "synthetic scan seed " + std::to_string(sd)));
        }
        return kOk;
    }
    if (count != 1) throw UsageError("--count needs --dir");
    const auto scan = generate_synthetic_scan(seed, p);
    emit(out, serialize_swc(scan.forest, "synthetic scan seed " + std::to_string(seed)));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cerebral artery network layout engine"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--config", common.config_path, "flat key = value config file");
    app.add_option("--set", common.sets, "override one config key (key=value)");

    std::string input, out, labels, color, edge, dir;
    std::vector<std::string> blocks;
    double severity = 0.0;
    bool no_legend = false;
    unsigned threads = 0;
    std::uint64_t seed = 0;
    int count = 1;
    SynthParams params;

    auto* layout = app.add_subcommand("layout", "lay out one SWC scan as scene JSON");
    layout->add_option("input", input, "SWC file")->required();
    layout->add_option("--labels", labels, "label override file");
    layout->add_option("--out,-o", out, "scene JSON path (stdout if absent)");

    auto* render = app.add_subcommand("render", "render scene JSON to SVG");
    render->add_option("scene", input, "scene JSON file")->required();
    render->add_option("--color", color, "categorical, flow or bw");
    render->add_flag("--no-legend", no_legend);
    render->add_option("--out,-o", out, "SVG path (stdout if absent)");

    auto* flow = app.add_subcommand("flow", "scene JSON with per-edge blood flow");
    flow->add_option("input", input, "SWC file")->required();
    flow->add_option("--block", blocks, "edge id or label to block (repeatable)");
    flow->add_option("--out,-o", out, "scene JSON path (stdout if absent)");

    auto* inject = app.add_subcommand("inject", "narrow one edge and write the SWC");
    inject->add_option("input", input, "SWC file")->required();
    inject->add_option("--edge", edge, "edge id or label")->required();
    inject->add_option("--severity", severity, "fraction of radius removed, in (0, 1)")->required();
    inject->add_option("--out,-o", out, "SWC path (stdout if absent)");

    auto* metrics = app.add_subcommand("metrics", "symmetry and width outliers as JSON");
    metrics->add_option("input", input, "SWC file")->required();
    metrics->add_option("--out,-o", out, "JSON path (stdout if absent)");

    auto* validate = app.add_subcommand("validate", "robustness checks over a directory of scans");
    validate->add_option("dir", dir, "directory of .swc files")->required();
    validate->add_option("--out,-o", out, "report JSON path (stdout if absent)");
    validate->add_option("--threads", threads, "worker count, 0 for all cores");

    auto* gen = app.add_subcommand("gen", "write synthetic scans");
    gen->add_option("--seed", seed, "first seed")->required();
    gen->add_option("--out,-o", out, "SWC path (stdout if absent)");
    gen->add_option("--count", count, "number of scans (with --dir)");
    gen->add_option("--dir", dir, "output directory, files scan_<seed>.swc");
    gen->add_option("--taper", params.taper, "child / parent radius");
    gen->add_option("--noise", params.noise, "relative jitter");
    gen->add_option("--min-depth", params.min_depth, "bifurcation levels per tree, lower bound");
    gen->add_option("--max-depth", params.max_depth, "bifurcation levels per tree, upper bound");
    gen->add_option("--branch-probability", params.branch_probability, "split chance below max depth");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*layout) return run_layout(common, input, labels, out);
        if (*render) {
            if (!color.empty()) common.extra["color"] = color;
            return run_render(common, input, out, !no_legend);
        }
        if (*flow) return run_flow(common, input, blocks, out);
        if (*inject) return run_inject(common, input, edge, severity, out);
        if (*metrics) return run_metrics(common, input, out);
        if (*validate) return run_validate(common, dir, out, threads);
        if (*gen) return run_gen(seed, out, count, dir, params);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kUsage;
    } catch (const SwcError& e) {
        std::cerr << "error: " << swc_context(e, input) << "\n";
        return kInput;
    } catch (const ClassificationFailed& e) {
        std::cerr << "classification failed:";
        for (const auto& f : e.failures()) {
            std::cerr << "\n  stage " << f.stage << " at node " << f.node << " (" << side_code(f.side)
                      << "): " << f.message;
        }
        std::cerr << "\n";
        return kClassify;
    } catch (const CannotClose& e) {
        std::cerr << "classification failed: " << e.what() << "\n";
        return kClassify;
    } catch (const SchemaMismatch& e) {
        std::cerr << "error: " << input << ": " << e.what() << "\n";
        return kSchema;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    }
    return kUsage;
}
