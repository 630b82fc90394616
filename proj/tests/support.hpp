#pragma once

// Shared fixtures for the unit and acceptance suites.

#include <memory>
#include <vector>

#include "cerebro/classify.hpp"
#include "cerebro/network.hpp"
#include "cerebro/swc.hpp"
#include "cerebro/synth.hpp"

namespace cerebro::test {

/// Unbranched chain through the given points, root first.
inline SegmentForest chain_forest(const std::vector<Vec3>& pts, double radius = 1.0) {
    std::vector<SwcRecord> recs;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        recs.push_back({static_cast<int>(i) + 1, 3, pts[i], radius, i == 0 ? -1 : static_cast<int>(i)});
    }
    return SegmentForest(std::move(recs));
}

/// Points along a polyline through waypoints with unit steps.
inline std::vector<Vec3> walk(const std::vector<Vec3>& waypoints, double step = 1.0) {
    std::vector<Vec3> out{waypoints.front()};
    for (std::size_t i = 1; i < waypoints.size(); ++i) {
        const Vec3 a = waypoints[i - 1];
        const Vec3 b = waypoints[i];
        const int n = std::max(1, static_cast<int>(std::lround(distance(a, b) / step)));
        for (int k = 1; k <= n; ++k) out.push_back(a + (b - a) * (static_cast<double>(k) / n));
    }
    return out;
}

struct Pipeline {
    SyntheticScan scan;
    VesselGraph graph;
    LabeledNetwork network;
};

inline Pipeline classified(std::uint64_t seed, const SynthParams& params = {}) {
    auto scan = generate_synthetic_scan(seed, params);
    auto graph = contract_chains(scan.forest);
    auto net = reconstruct_cow(classify_arteries_strict(graph));
    return {std::move(scan), std::move(graph), std::move(net)};
}

}  // namespace cerebro::test
