#pragma once

// Abstract 2D layout: six cerebral trees drawn upward in layered bands
// above the Circle of Willis baseline, the ring drawn horizontally on the
// baseline, and the inflow chains abstracted below it.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cerebro/color.hpp"
#include "cerebro/geometry.hpp"
#include "cerebro/network.hpp"

namespace cerebro {

struct LayoutConfig {
    double layer_height = 40.0;
    double cow_baseline_y = 360.0;
    double band_gutter = 16.0;
    double canvas_width = 1200.0;
    double stroke_min = 1.0;
    double stroke_max = 12.0;
    double carotid_band_height = 200.0;
    double carotid_amplitude = 14.0;
    double acomm_arc_rise = 24.0;
    double pcomm_arc_drop = 24.0;
    // Lateral reach of the ring: the outermost ring junction lands this far
    // from the midline.
    double cow_ring_half_width = 150.0;
    double bend_noise_fraction = 0.05;
    // Corpus-wide width normalization when both bounds are positive.
    double corpus_radius_lo = 0.0;
    double corpus_radius_hi = 0.0;

    double midline() const { return canvas_width / 2.0; }
    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

/// Horizontal canvas interval reserved for one tree.
struct Band {
    ArteryLabel label;
    Side side = Side::None;
    double lo = 0.0;
    double hi = 0.0;
    int leaves = 1;
};

struct SlotAssignment {
    double unit = 0.0;  // px per leaf
    std::vector<Band> bands;  // per hemisphere, midline outward; left first
    const Band* band(const ArteryLabel& label) const;
};

/// Child edges in left-to-right drawing order, per tree node.
using ChildOrder = std::map<NodeId, std::vector<EdgeId>>;

struct EdgePath {
    EdgeId edge_id = 0;
    std::vector<CubicBezier> path;
    double stroke_width = 0.0;
    bool dashed = false;
    ArteryLabel label;
    std::optional<double> flow;
    Rgb color;
    std::vector<int> segment_ids;
    // First segment runs from an off-baseline attachment to the tree's band.
    bool connector = false;

    Vec2 start() const { return path.front().p[0]; }
    Vec2 end() const { return path.back().p[3]; }
};

struct SceneNode {
    NodeId id = 0;
    Vec2 position;
    int depth = -1;  // tree depth; -1 for ring interiors and inflow nodes
};

struct Projection {
    EdgeId edge_id = 0;
    std::vector<Vec2> polyline;
};

struct LayoutScene {
    std::string scan_id;
    LayoutConfig config;
    double radius_lo = 0.0;
    double radius_hi = 0.0;
    std::vector<SceneNode> nodes;
    std::vector<EdgePath> edges;
    // "front" = (lateral, vertical), "side" = (depth, vertical), "top" = (lateral, depth).
    std::map<std::string, std::vector<Projection>> projections;

    const EdgePath* edge(EdgeId id) const;
    const SceneNode* node(NodeId id) const;
};

inline const std::vector<std::string>& projection_views() {
    static const std::vector<std::string> views{"front", "side", "top"};
    return views;
}

struct TreeLayout {
    std::map<NodeId, Vec2> positions;
    std::map<NodeId, int> depths;
    std::vector<EdgePath> paths;
};

/// Canvas x of every ring node; the basilar bifurcation sits on the midline.
std::map<NodeId, double> ring_anchors(const LabeledNetwork& network, const LayoutConfig& config);

SlotAssignment assign_slots(const LabeledNetwork& network, const LayoutConfig& config);

/// Children sorted by the mean lateral coordinate of every segment position
/// in their subtree; ties go to the larger subtree, then the original order.
ChildOrder order_subtrees(const SubTree& tree, const VesselGraph& graph);

/// Tree nodes and tree edge paths. `anchors` gives the canvas position of
/// attachment nodes.
TreeLayout layout_trees(const LabeledNetwork& network, const SlotAssignment& slots,
                        const std::map<ArteryLabel, ChildOrder>& orders, const std::map<NodeId, Vec2>& anchors,
                        const LayoutConfig& config);

/// Stacked half-wave poly-Bezier for one inflow edge. `top` is where the edge
/// meets the ring side of its chain, `length` the rendered arc length, `sign`
/// the lateral direction of the first half-wave.
std::vector<CubicBezier> inflow_curve(Vec2 top, double arc_length, int bends, int sign, const LayoutConfig& config);

struct InflowLayout {
    std::map<NodeId, Vec2> positions;
    std::vector<EdgePath> paths;
};

/// Inflow chains (BA, IC_L, IC_R) below the baseline. Each chain spans
/// carotid_band_height * length / longest chain length.
InflowLayout abstract_inflow(const LabeledNetwork& network, const std::map<NodeId, Vec2>& ring_positions,
                             const LayoutConfig& config);

struct RingLayout {
    std::map<NodeId, Vec2> positions;
    std::vector<EdgePath> paths;
};

/// Throws CannotClose when the ring is not closed.
RingLayout layout_cow(const LabeledNetwork& network, const LayoutConfig& config);

struct WidthScale {
    double radius_lo = 0.0;
    double radius_hi = 0.0;
    std::map<EdgeId, double> widths;
};

WidthScale scale_widths(const LabeledNetwork& network, const LayoutConfig& config);

struct SceneOptions {
    std::string scan_id;
    ColorScheme scheme;
    std::optional<std::map<EdgeId, double>> flow;
};

/// Runs every layout step and assembles the scene.
LayoutScene compose_scene(const LabeledNetwork& network, const LayoutConfig& config,
                          const SceneOptions& options = {});

/// Checks the structural layout properties; returns one message per violation.
struct LayoutCheck {
    std::vector<std::string> layer_alignment;
    std::vector<std::string> hemisphere_separation;
    std::vector<std::string> slot_order;
    std::vector<std::string> planarity;
    std::vector<std::string> monotonicity;
    std::vector<std::string> ring_baseline;

    bool ok() const;
    std::vector<std::string> all() const;
};

LayoutCheck check_layout(const LayoutScene& scene, const LabeledNetwork& network);

}  // namespace cerebro
