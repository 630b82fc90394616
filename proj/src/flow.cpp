#include "cerebro/flow.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>
#include <string>

namespace cerebro {

double flow_height(const LabeledNetwork& network, EdgeId id, FlowHeight mode) {
    const auto role = network.role(id);
    if (role != EdgeRole::CerebralTree && role != EdgeRole::UnlabeledTree) return 0.0;
    if (mode == FlowHeight::TreeDepth) return network.layer(id);
    const auto& ring = network.ring();
    const VesselGraph& g = network.graph();
    const double base = ring.ba_bifurcation ? g.node_position(*ring.ba_bifurcation).y : 0.0;
    return std::max(0.0, g.node_position(g.edge(id).to).y - base);
}

FlowAssignment compute_flow(const LabeledNetwork& network, const std::set<EdgeId>& blocked,
                            const FlowConfig& config) {
    const VesselGraph& g = network.graph();
    for (EdgeId id : blocked) {
        if (!g.has_edge(id) || g.edge(id).dashed) throw UnknownEdge(id);
    }
    FlowAssignment out;
    out.blocked_edges = blocked;

    const auto data_children = [&](NodeId n) {
        std::vector<EdgeId> kids;
        for (EdgeId c : g.out_edges(n)) {
            if (!g.edge(c).dashed) kids.push_back(c);
        }
        return kids;
    };
    // Flow entering each node from above; the root receives the whole budget.
    struct Item {
        NodeId node;
        double flow;
        bool dead;
    };
    std::vector<Item> stack{{g.root_node(), out.total_inflow, false}};
    while (!stack.empty()) {
        const Item item = stack.back();
        stack.pop_back();
        const auto kids = data_children(item.node);
        double total = 0.0;
        std::vector<double> shares;
        for (EdgeId c : kids) {
            shares.push_back(g.edge(c).mean_radius / (1.0 + flow_height(network, c, config.height)));
            total += shares.back();
        }
        for (std::size_t i = 0; i < kids.size(); ++i) {
            const EdgeId c = kids[i];
            double f = 0.0;
            if (kids.size() == 1) {
                f = item.flow;
            } else if (total > 0.0) {
                f = item.flow * shares[i] / total;
            }
            const bool dead = item.dead || blocked.count(c) != 0;
            if (blocked.count(c) && !item.dead) out.blocked_shares[c] = f;
            out.flows[c] = dead ? 0.0 : f;
            stack.push_back({g.edge(c).to, dead ? 0.0 : f, dead});
        }
    }
    return out;
}

std::set<EdgeId> resolve_edge_target(const LabeledNetwork& network, std::string_view target) {
    const VesselGraph& g = network.graph();
    int id = 0;
    const auto [ptr, ec] = std::from_chars(target.data(), target.data() + target.size(), id);
    if (ec == std::errc{} && ptr == target.data() + target.size()) {
        if (!g.has_edge(id)) throw UnknownEdge(id);
        return {id};
    }
    const auto label = ArteryLabel::parse(target);
    if (!label) throw std::invalid_argument("not an edge id or label: " + std::string(target));
    if (const SubTree* t = network.tree(*label)) return {t->root_edges.begin(), t->root_edges.end()};
    std::set<EdgeId> out;
    for (const auto& [e, l] : network.labels()) {
        if (l != *label || g.edge(e).dashed) continue;
        const auto parent = g.parent_edge(e);
        if (!parent || network.label(*parent) != *label) out.insert(e);
    }
    if (out.empty()) throw std::invalid_argument("no edge labeled " + std::string(target));
    return out;
}

}  // namespace cerebro
