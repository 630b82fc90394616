#pragma once

// Linear blood-flow model over the rooted data tree: a child's share of its
// parent's flow is proportional to its mean radius and inversely
// proportional to one plus its height above the ring.

#include <map>
#include <set>
#include <string_view>

#include "cerebro/network.hpp"

namespace cerebro {

enum class FlowHeight {
    TreeDepth,  // layer index inside the cerebral tree, 0 on the ring and inflow
    Metric,     // vertical distance in scan units above the basilar tip
};

struct FlowConfig {
    FlowHeight height = FlowHeight::TreeDepth;
};

struct FlowAssignment {
    std::map<EdgeId, double> flows;  // every non-dashed edge
    double total_inflow = 1.0;
    std::set<EdgeId> blocked_edges;
    // Share each blocked edge would have carried without the blockage.
    std::map<EdgeId, double> blocked_shares;

    double at(EdgeId id) const { return flows.at(id); }
};

/// Height term of the share divisor for one edge.
double flow_height(const LabeledNetwork& network, EdgeId id, FlowHeight mode);

/// Throws UnknownEdge for ids that are absent or dashed.
FlowAssignment compute_flow(const LabeledNetwork& network, const std::set<EdgeId>& blocked = {},
                            const FlowConfig& config = {});

/// Resolves "12" to edge 12 and a label name ("MCA_R") to the label's
/// topmost edges. Throws UnknownEdge or std::invalid_argument.
std::set<EdgeId> resolve_edge_target(const LabeledNetwork& network, std::string_view target);

}  // namespace cerebro
