#include "cerebro/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cerebro {

SeverityOutOfRange::SeverityOutOfRange(double severity)
    : std::invalid_argument("severity must lie in (0, 1), got " + std::to_string(severity)), severity_(severity) {}

SegmentForest inject_stenosis(const VesselGraph& graph, EdgeId edge, double severity) {
    if (!graph.has_edge(edge) || graph.edge(edge).dashed) throw UnknownEdge(edge);
    if (!(severity > 0.0 && severity < 1.0)) throw SeverityOutOfRange(severity);
    const auto& e = graph.edge(edge);
    const auto pts = graph.points(e);
    const std::size_t off = pts.size() - e.segment_ids.size();

    // A record's radius covers the segment that ends at it; test its midpoint.
    std::set<int> narrowed;
    double acc = 0.0;
    const double total = e.chain_length;
    for (std::size_t i = 0; i < e.segment_ids.size(); ++i) {
        const std::size_t k = i + off;
        const double len = k > 0 ? distance(pts[k - 1], pts[k]) : 0.0;
        const double mid = acc + len / 2.0;
        acc += len;
        if (total <= 0.0 || (mid >= 0.25 * total && mid <= 0.75 * total)) narrowed.insert(e.segment_ids[i]);
    }
    std::vector<SwcRecord> recs = graph.forest()->records();
    for (auto& r : recs) {
        if (narrowed.count(r.id)) r.radius *= 1.0 - severity;
    }
    return SegmentForest(std::move(recs));
}

const char* to_string(OutlierKind kind) { return kind == OutlierKind::Narrowing ? "narrowing" : "widening"; }

std::optional<Outlier> OutlierReport::top_narrowing() const {
    for (const auto& o : entries) {
        if (o.kind == OutlierKind::Narrowing) return o;
    }
    return std::nullopt;
}

OutlierReport detect_width_outliers(const LabeledNetwork& network, const OutlierThresholds& thresholds) {
    const VesselGraph& g = network.graph();
    OutlierReport out;
    for (const auto& e : g.edges()) {
        if (e.dashed) continue;
        const auto role = network.role(e.id);
        if (role != EdgeRole::CerebralTree && role != EdgeRole::UnlabeledTree) continue;
        const auto parent = g.parent_edge(e.id);
        if (!parent) continue;
        const double pr = g.edge(*parent).mean_radius;
        if (!(pr > 0.0)) continue;
        const double ratio = e.mean_radius / pr;
        if (ratio < thresholds.narrowing) {
            out.entries.push_back({e.id, OutlierKind::Narrowing, ratio});
        } else if (ratio > thresholds.widening) {
            out.entries.push_back({e.id, OutlierKind::Widening, ratio});
        }
    }
    std::stable_sort(out.entries.begin(), out.entries.end(), [](const Outlier& a, const Outlier& b) {
        const double da = std::abs(std::log(a.taper_ratio));
        const double db = std::abs(std::log(b.taper_ratio));
        if (da != db) return da > db;
        return a.edge_id < b.edge_id;
    });
    return out;
}

int tree_max_depth(const LabeledNetwork& network, const SubTree& tree) {
    int d = 0;
    for (EdgeId e : tree.edges) d = std::max(d, network.layer(e));
    return d;
}

int tree_leaf_count(const LabeledNetwork& network, const SubTree& tree) {
    const VesselGraph& g = network.graph();
    const std::set<EdgeId> members(tree.edges.begin(), tree.edges.end());
    int leaves = 0;
    for (EdgeId id : tree.edges) {
        const auto kids = g.out_edges(g.edge(id).to);
        if (std::none_of(kids.begin(), kids.end(), [&](EdgeId c) { return members.count(c) != 0; })) ++leaves;
    }
    return leaves;
}

SymmetryReport symmetry_metrics(const LabeledNetwork& network) {
    using K = ArteryLabel::Kind;
    SymmetryReport out;
    for (K k : {K::PCA, K::ACA, K::MCA}) {
        PairSymmetry p;
        p.kind = k;
        const auto left = ArteryLabel::named(k, Side::Left);
        const auto right = ArteryLabel::named(k, Side::Right);
        const SubTree* l = network.tree(left);
        const SubTree* r = network.tree(right);
        if (l) {
            p.depth_l = tree_max_depth(network, *l);
            p.leaves_l = tree_leaf_count(network, *l);
        } else {
            p.missing.push_back(left.name());
        }
        if (r) {
            p.depth_r = tree_max_depth(network, *r);
            p.leaves_r = tree_leaf_count(network, *r);
        } else {
            p.missing.push_back(right.name());
        }
        if (l && r) {
            p.depth_delta = std::abs(p.depth_l - p.depth_r);
            p.leaf_delta = std::abs(p.leaves_l - p.leaves_r);
            p.asymmetry_index = static_cast<double>(p.leaf_delta) / std::max(1, p.leaves_l + p.leaves_r);
        }
        out.pairs.push_back(std::move(p));
    }
    return out;
}

}  // namespace cerebro
