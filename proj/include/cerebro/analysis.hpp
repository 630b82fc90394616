#pragma once

// Stenosis injection, width-outlier detection and left/right symmetry.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cerebro/network.hpp"

namespace cerebro {

class SeverityOutOfRange : public std::invalid_argument {
public:
    explicit SeverityOutOfRange(double severity);
    double severity() const { return severity_; }

private:
    double severity_;
};

/// Scales the radii of the segments in the central half (by arc length) of
/// the edge by (1 - severity). Severity must lie in (0, 1). Positions and
/// topology are untouched.
SegmentForest inject_stenosis(const VesselGraph& graph, EdgeId edge, double severity);

struct OutlierThresholds {
    double narrowing = 0.5;
    double widening = 1.5;
};

enum class OutlierKind { Narrowing, Widening };
const char* to_string(OutlierKind kind);

struct Outlier {
    EdgeId edge_id = 0;
    OutlierKind kind = OutlierKind::Narrowing;
    double taper_ratio = 1.0;
};

/// Sorted by |ln taper_ratio|, largest first; ties by edge id.
struct OutlierReport {
    std::vector<Outlier> entries;

    /// Highest-ranked narrowing entry.
    std::optional<Outlier> top_narrowing() const;
};

/// Compares every tree edge to its parent edge. Ring and inflow edges are
/// not tested; a tree root edge is compared to the ring edge it leaves.
OutlierReport detect_width_outliers(const LabeledNetwork& network, const OutlierThresholds& thresholds = {});

struct PairSymmetry {
    ArteryLabel::Kind kind = ArteryLabel::Kind::MCA;
    // -1 marks a missing tree; deltas and index are then -1 too.
    int depth_l = -1;
    int depth_r = -1;
    int leaves_l = -1;
    int leaves_r = -1;
    int depth_delta = -1;
    int leaf_delta = -1;
    double asymmetry_index = -1.0;
    std::vector<std::string> missing;  // "PCA_L" etc.

    bool complete() const { return missing.empty(); }
};

struct SymmetryReport {
    std::vector<PairSymmetry> pairs;  // PCA, ACA, MCA
};

SymmetryReport symmetry_metrics(const LabeledNetwork& network);

/// Max layer and leaf count of a tree.
int tree_max_depth(const LabeledNetwork& network, const SubTree& tree);
int tree_leaf_count(const LabeledNetwork& network, const SubTree& tree);

}  // namespace cerebro
