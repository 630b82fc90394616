#include "cerebro/pipeline.hpp"

#include <filesystem>

namespace cerebro {

LabeledNetwork build_network(const SegmentForest& canonical, const Settings& settings,
                             const std::optional<std::string>& overrides) {
    VesselGraph graph = contract_chains(canonical);
    Classification c = classify_arteries(graph, settings.classify);
    if (!overrides) {
        if (!c.ok()) throw ClassificationFailed(c.failures);
        return reconstruct_cow(*c.network);
    }
    const auto manual = parse_label_overrides(*overrides, graph);
    if (c.network) return reconstruct_cow(apply_label_overrides(*c.network, manual));
    for (const auto& e : graph.edges()) {
        if (!manual.count(e.id)) throw ClassificationFailed(c.failures);
    }
    return reconstruct_cow(LabeledNetwork(std::move(graph), manual));
}

LabeledNetwork load_network(const std::string& swc_path, const Settings& settings,
                            const std::optional<std::string>& overrides) {
    return build_network(apply_axis_map(load_swc(swc_path), settings.axes), settings, overrides);
}

LayoutScene build_scene(const LabeledNetwork& network, const Settings& settings, const std::string& scan_id,
                        const std::optional<FlowAssignment>& flow) {
    SceneOptions opts;
    opts.scan_id = scan_id;
    opts.scheme = settings.scheme;
    if (flow) opts.flow = flow->flows;
    return compose_scene(network, settings.layout, opts);
}

std::string scan_id_of(const std::string& path) { return std::filesystem::path(path).stem().string(); }

}  // namespace cerebro
