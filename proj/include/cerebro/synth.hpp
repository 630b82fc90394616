#pragma once

// Synthetic cerebral artery scans with known labels.

#include <cstdint>
#include <map>

#include "cerebro/labels.hpp"
#include "cerebro/swc.hpp"
#include "cerebro/vessel_graph.hpp"

namespace cerebro {

struct SynthParams {
    int min_depth = 2;                // bifurcation levels per cerebral tree
    int max_depth = 4;
    double branch_probability = 0.8;  // chance that a non-root tree node below max depth splits
    double taper = 0.65;              // child radius / parent radius
    double step = 1.0;                // mm between consecutive segments
    double noise = 0.05;              // relative position and radius jitter
    // Left IC stops just below the junction (fails IC detection).
    bool truncate_left_ic = false;
};

struct SyntheticScan {
    SegmentForest forest;
    std::map<int, ArteryLabel> record_labels;  // every record except the root
    int bifurcations = 0;
};

SyntheticScan generate_synthetic_scan(std::uint64_t seed, const SynthParams& params = {});

/// Ground truth per contracted edge, read from the edge's last segment.
std::map<EdgeId, ArteryLabel> edge_truth(const SyntheticScan& scan, const VesselGraph& graph);

/// Negates the lateral coordinate of every record.
SegmentForest mirror_lateral(const SegmentForest& forest);

/// Drops `record_id` and everything below it.
SegmentForest remove_subtree(const SegmentForest& forest, int record_id);

}  // namespace cerebro
