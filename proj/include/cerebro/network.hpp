#pragma once

// Labeled mixed-hierarchy network: the contracted vessel graph plus
// anatomical labels, the Circle of Willis ring, the six cerebral trees and
// the three inflow chains.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cerebro/labels.hpp"
#include "cerebro/vessel_graph.hpp"

namespace cerebro {

enum class EdgeRole { Inflow, Ring, CerebralTree, UnlabeledTree };

/// Where a ring edge sits: basilar tip to PCA junction, PCA junction to
/// carotid junction, carotid junction to carotid terminus, or the A. Comm.
enum class RingSection { Posterior, PComm, Carotid, AComm };

struct CowSide {
    std::optional<NodeId> pca_junction;
    std::optional<NodeId> ic_junction;
    std::optional<NodeId> carotid_terminus;
    // Ordered outward from the basilar tip. A nullopt path is missing.
    std::optional<std::vector<EdgeId>> posterior;
    std::optional<std::vector<EdgeId>> pcomm;
    std::optional<std::vector<EdgeId>> carotid;
};

struct CowRing {
    std::optional<NodeId> ba_bifurcation;
    CowSide left;
    CowSide right;
    std::optional<EdgeId> acomm;

    const CowSide& side(Side s) const { return s == Side::Left ? left : right; }
};

/// A rooted edge set hanging from a single attachment node.
struct SubTree {
    ArteryLabel label;
    NodeId attachment = 0;
    std::vector<EdgeId> root_edges;  // edges leaving the attachment, child order
    std::vector<EdgeId> edges;       // preorder
};

class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownEdge : public std::runtime_error {
public:
    explicit UnknownEdge(EdgeId id)
        : std::runtime_error("unknown edge id " + std::to_string(id)), id_(id) {}
    EdgeId id() const { return id_; }

private:
    EdgeId id_;
};

class CannotClose : public std::runtime_error {
public:
    explicit CannotClose(std::vector<std::string> missing);
    const std::vector<std::string>& missing() const { return missing_; }

private:
    std::vector<std::string> missing_;
};

class LabeledNetwork {
public:
    /// Derives ring, trees and inflow chains from the labels. Throws
    /// InvariantViolation when the labeling cannot be decomposed.
    LabeledNetwork(VesselGraph graph, std::map<EdgeId, ArteryLabel> labels);

    const VesselGraph& graph() const { return graph_; }
    const std::map<EdgeId, ArteryLabel>& labels() const { return labels_; }
    ArteryLabel label(EdgeId id) const;

    const CowRing& ring() const { return ring_; }
    /// Closed ring edge order, empty until every ring member exists.
    const std::vector<EdgeId>& cow_cycle() const { return cow_cycle_; }
    bool ring_closed() const { return !cow_cycle_.empty(); }

    const std::map<ArteryLabel, SubTree>& cerebral_trees() const { return cerebral_; }
    const std::map<ArteryLabel, SubTree>& unlabeled_trees() const { return unlabeled_; }
    const SubTree* tree(ArteryLabel label) const;
    /// BA, IC_L, IC_R edges, each ordered outward from the ring.
    const std::map<ArteryLabel, std::vector<EdgeId>>& inflow() const { return inflow_; }

    EdgeRole role(EdgeId id) const;
    std::optional<RingSection> ring_section(EdgeId id) const;
    /// Tree the edge belongs to, for cerebral and unlabeled tree edges.
    const SubTree* owning_tree(EdgeId id) const;
    /// Depth of the edge's end node inside its tree (root edges = 1); 0 for
    /// ring and inflow edges.
    int layer(EdgeId id) const;
    /// Lateral reference: mean lateral coordinate of the basilar chain.
    double midline_lateral() const { return midline_lateral_; }

private:
    void derive();

    VesselGraph graph_;
    std::map<EdgeId, ArteryLabel> labels_;
    CowRing ring_;
    std::vector<EdgeId> cow_cycle_;
    std::map<ArteryLabel, SubTree> cerebral_;
    std::map<ArteryLabel, SubTree> unlabeled_;
    std::map<ArteryLabel, std::vector<EdgeId>> inflow_;
    std::map<EdgeId, EdgeRole> roles_;
    std::map<EdgeId, RingSection> sections_;
    std::map<EdgeId, ArteryLabel> owner_;
    std::map<EdgeId, int> layers_;
    double midline_lateral_ = 0.0;
};

/// Inserts dashed edges for every expected but absent ring member (the
/// A. Comm. is always absent from tree-shaped input) and returns the network
/// with a closed ring. Idempotent.
LabeledNetwork reconstruct_cow(const LabeledNetwork& network);

/// Overrides win over existing labels. An edge that was Unlabeled inherits
/// the cerebral tree label of its parent edge after overrides, so relabeling
/// the root of an unlabeled subtree moves the whole subtree.
LabeledNetwork apply_label_overrides(const LabeledNetwork& network,
                                     const std::map<EdgeId, ArteryLabel>& overrides);

/// Flat "key = value" override document. Keys are edge ids, or "seg:<id>" for
/// an SWC record resolved to its containing edge; values are label names.
std::map<EdgeId, ArteryLabel> parse_label_overrides(std::string_view text, const VesselGraph& graph);

/// Copy of the graph without the given edges (network-level ablation).
VesselGraph without_edges(const VesselGraph& graph, const std::set<EdgeId>& removed);

}  // namespace cerebro
