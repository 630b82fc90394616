#pragma once

// Artery edges contracted from segment chains. Nodes are SWC record ids of
// the root, bifurcations and chain ends; synthetic (dashed) edges connect
// existing nodes and never take part in the rooted data tree.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cerebro/geometry.hpp"
#include "cerebro/swc.hpp"

namespace cerebro {

using NodeId = int;
using EdgeId = int;

enum class Directedness { TowardBrain, Bidirectional };

struct ArteryEdge {
    EdgeId id = 0;
    NodeId from = 0;
    NodeId to = 0;
    std::vector<int> segment_ids;  // parent-to-child order, empty when dashed
    double mean_radius = 0.0;      // chain-length weighted
    double chain_length = 0.0;
    Vec3 centroid;                 // length-weighted over the chain polyline
    std::optional<int> bend_count;
    Directedness directedness = Directedness::TowardBrain;
    bool dashed = false;
};

struct GraphWarning {
    NodeId node = 0;
    int degree = 0;
    std::string message;
};

class VesselGraph {
public:
    VesselGraph() = default;

    const std::shared_ptr<const SegmentForest>& forest() const { return forest_; }
    const std::vector<ArteryEdge>& edges() const { return edges_; }
    const std::vector<GraphWarning>& warnings() const { return warnings_; }
    NodeId root_node() const { return root_; }

    bool has_edge(EdgeId id) const { return index_.count(id) != 0; }
    const ArteryEdge& edge(EdgeId id) const;
    ArteryEdge& edge_mut(EdgeId id);

    /// Data-tree edges leaving `node`, in SWC child order.
    std::span<const EdgeId> out_edges(NodeId node) const;
    /// Data-tree edge ending at `node`.
    std::optional<EdgeId> in_edge(NodeId node) const;
    std::optional<EdgeId> parent_edge(EdgeId id) const;
    /// All data-tree edges below `id`, not including `id`, preorder.
    std::vector<EdgeId> descendants(EdgeId id) const;
    /// Root-first sequence of data-tree edges from the root down to `id`.
    std::vector<EdgeId> ancestry(EdgeId id) const;
    /// Edge position in data-tree preorder (depth in edges from root edge, 0-based).
    int tree_depth(EdgeId id) const;

    Vec3 node_position(NodeId node) const;

    /// Polyline of an edge: the start node position (when it belongs to the
    /// parent chain) followed by the edge's own segment positions.
    std::vector<Vec3> points(const ArteryEdge& e) const;
    /// Record ids matching `points`.
    std::vector<int> point_ids(const ArteryEdge& e) const;

    /// Inserts a synthetic bidirectional dashed edge; returns its id.
    EdgeId add_dashed_edge(NodeId from, NodeId to, double radius);

    friend VesselGraph contract_chains(std::shared_ptr<const SegmentForest> forest);
    friend VesselGraph without_edges(const VesselGraph& graph, const std::set<EdgeId>& removed);

private:
    std::shared_ptr<const SegmentForest> forest_;
    std::vector<ArteryEdge> edges_;
    std::map<EdgeId, std::size_t> index_;
    std::map<NodeId, std::vector<EdgeId>> out_;
    std::map<NodeId, EdgeId> in_;
    std::vector<GraphWarning> warnings_;
    NodeId root_ = 0;
};

/// Contracts maximal unbranched segment chains into artery edges. Edge ids are
/// assigned 1..E in preorder; nodes with more than two children are kept and
/// reported as NonBinaryBifurcation warnings.
VesselGraph contract_chains(std::shared_ptr<const SegmentForest> forest);
inline VesselGraph contract_chains(const SegmentForest& forest) {
    return contract_chains(std::make_shared<const SegmentForest>(forest));
}

class DegenerateChain : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bend count of a chain from its (lateral, vertical) projection. Each
/// displacement is vertical when |dy| >= |dx|, horizontal otherwise; runs
/// shorter than noise_fraction * chain length are dropped, and the count is
/// the number of alternating runs that remain. A chain that is one vertical
/// run has no bends.
int count_bends(std::span<const Vec3> points, double noise_fraction = 0.05);
int count_bends(const ArteryEdge& edge, const VesselGraph& graph, double noise_fraction = 0.05);

/// Signed lateral direction (+1/-1) of the first surviving horizontal run,
/// 0 when the chain has none.
int first_lateral_sign(std::span<const Vec3> points, double noise_fraction = 0.05);

}  // namespace cerebro
