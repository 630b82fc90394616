#include "cerebro/vessel_graph.hpp"

#include <algorithm>
#include <cmath>

namespace cerebro {

const ArteryEdge& VesselGraph::edge(EdgeId id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) throw std::out_of_range("no artery edge " + std::to_string(id));
    return edges_[it->second];
}

ArteryEdge& VesselGraph::edge_mut(EdgeId id) {
    const auto it = index_.find(id);
    if (it == index_.end()) throw std::out_of_range("no artery edge " + std::to_string(id));
    return edges_[it->second];
}

std::span<const EdgeId> VesselGraph::out_edges(NodeId node) const {
    const auto it = out_.find(node);
    if (it == out_.end()) return {};
    return it->second;
}

std::optional<EdgeId> VesselGraph::in_edge(NodeId node) const {
    const auto it = in_.find(node);
    if (it == in_.end()) return std::nullopt;
    return it->second;
}

std::optional<EdgeId> VesselGraph::parent_edge(EdgeId id) const {
    const auto& e = edge(id);
    if (e.dashed) return std::nullopt;
    const auto p = in_edge(e.from);
    if (p && *p == id) return std::nullopt;  // single-record forest
    return p;
}

std::vector<EdgeId> VesselGraph::descendants(EdgeId id) const {
    std::vector<EdgeId> out;
    if (edge(id).dashed) return out;
    std::vector<EdgeId> stack;
    const auto push_children = [&](EdgeId e) {
        const auto kids = out_edges(edge(e).to);
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
            if (*it != e) stack.push_back(*it);
        }
    };
    push_children(id);
    while (!stack.empty()) {
        const EdgeId e = stack.back();
        stack.pop_back();
        out.push_back(e);
        push_children(e);
    }
    return out;
}

std::vector<EdgeId> VesselGraph::ancestry(EdgeId id) const {
    std::vector<EdgeId> chain{id};
    for (auto p = parent_edge(id); p; p = parent_edge(*p)) chain.push_back(*p);
    std::reverse(chain.begin(), chain.end());
    return chain;
}

int VesselGraph::tree_depth(EdgeId id) const {
    int depth = 0;
    for (auto p = parent_edge(id); p; p = parent_edge(*p)) ++depth;
    return depth;
}

Vec3 VesselGraph::node_position(NodeId node) const { return forest_->record(node).position; }

std::vector<int> VesselGraph::point_ids(const ArteryEdge& e) const {
    if (e.dashed) return {e.from, e.to};
    std::vector<int> ids;
    ids.reserve(e.segment_ids.size() + 1);
    if (e.segment_ids.empty() || e.segment_ids.front() != e.from) ids.push_back(e.from);
    ids.insert(ids.end(), e.segment_ids.begin(), e.segment_ids.end());
    return ids;
}

std::vector<Vec3> VesselGraph::points(const ArteryEdge& e) const {
    std::vector<Vec3> pts;
    for (int id : point_ids(e)) pts.push_back(forest_->record(id).position);
    return pts;
}

EdgeId VesselGraph::add_dashed_edge(NodeId from, NodeId to, double radius) {
    EdgeId id = edges_.empty() ? 1 : edges_.back().id + 1;
    for (const auto& e : edges_) id = std::max(id, e.id + 1);
    ArteryEdge e;
    e.id = id;
    e.from = from;
    e.to = to;
    e.mean_radius = radius;
    e.chain_length = 0.0;
    e.centroid = (node_position(from) + node_position(to)) * 0.5;
    e.directedness = Directedness::Bidirectional;
    e.dashed = true;
    index_.emplace(id, edges_.size());
    edges_.push_back(std::move(e));
    return id;
}

namespace {

void fill_attributes(ArteryEdge& e, const std::vector<Vec3>& pts, const SegmentForest& forest) {
    double length = 0.0;
    double weighted_radius = 0.0;
    Vec3 weighted_centre;
    const std::size_t offset = pts.size() - e.segment_ids.size();  // 1 when the start node is prepended
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double d = distance(pts[i - 1], pts[i]);
        length += d;
        weighted_centre = weighted_centre + (pts[i - 1] + pts[i]) * (0.5 * d);
        if (i >= offset) weighted_radius += d * forest.record(e.segment_ids[i - offset]).radius;
    }
    e.chain_length = length;
    double weight = 0.0;
    for (std::size_t i = std::max<std::size_t>(offset, 1); i < pts.size(); ++i) {
        weight += distance(pts[i - 1], pts[i]);
    }
    if (weight > 0.0) {
        e.mean_radius = weighted_radius / weight;
    } else {
        double sum = 0.0;
        for (int id : e.segment_ids) sum += forest.record(id).radius;
        e.mean_radius = sum / static_cast<double>(e.segment_ids.size());
    }
    if (length > 0.0) {
        e.centroid = weighted_centre * (1.0 / length);
    } else {
        Vec3 sum;
        for (const auto& p : pts) sum = sum + p;
        e.centroid = sum * (1.0 / static_cast<double>(pts.size()));
    }
}

}  // namespace

VesselGraph contract_chains(std::shared_ptr<const SegmentForest> forest) {
    VesselGraph g;
    g.forest_ = std::move(forest);
    const SegmentForest& f = *g.forest_;
    const int root = f.root_id();
    g.root_ = root;

    struct Pending {
        NodeId from;
        int first;
    };
    std::vector<Pending> stack;
    const auto push_node_children = [&](NodeId node) {
        const auto kids = f.children(node);
        if (kids.size() > 2) {
            g.warnings_.push_back({node, static_cast<int>(kids.size()),
                                   "NonBinaryBifurcation at node " + std::to_string(node) + " with " +
                                       std::to_string(kids.size()) + " children"});
        }
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back({node, *it});
    };

    if (f.children(root).size() == 1 || f.children(root).empty()) {
        stack.push_back({root, root});
    } else {
        push_node_children(root);
    }

    EdgeId next_id = 1;
    while (!stack.empty()) {
        const Pending p = stack.back();
        stack.pop_back();

        ArteryEdge e;
        e.id = next_id++;
        e.from = p.from;
        int cur = p.first;
        e.segment_ids.push_back(cur);
        while (f.children(cur).size() == 1) {
            cur = f.children(cur).front();
            e.segment_ids.push_back(cur);
        }
        e.to = cur;
        fill_attributes(e, g.points(e), f);

        g.index_.emplace(e.id, g.edges_.size());
        g.out_[e.from].push_back(e.id);
        g.in_[e.to] = e.id;
        g.edges_.push_back(std::move(e));

        if (f.children(cur).size() >= 2) push_node_children(cur);
    }
    return g;
}

namespace {

struct Run {
    bool vertical;
    double length;
    int first_sign;
};

std::vector<Run> surviving_runs(std::span<const Vec3> points, double noise_fraction) {
    std::vector<Run> runs;
    double total = 0.0;
    int distinct = 1;
    for (std::size_t i = 1; i < points.size(); ++i) {
        const Vec3 d = points[i] - points[i - 1];
        const double len = d.norm();
        if (len == 0.0) continue;
        ++distinct;
        total += len;
        const bool vertical = std::abs(d.y) >= std::abs(d.x);
        if (!runs.empty() && runs.back().vertical == vertical) {
            runs.back().length += len;
        } else {
            runs.push_back({vertical, len, d.x > 0 ? 1 : (d.x < 0 ? -1 : 0)});
        }
    }
    if (points.empty() || distinct < 2) throw DegenerateChain("chain has fewer than 2 distinct positions");

    std::vector<Run> kept;
    for (const auto& r : runs) {
        if (r.length < noise_fraction * total) continue;
        if (!kept.empty() && kept.back().vertical == r.vertical) {
            kept.back().length += r.length;
        } else {
            kept.push_back(r);
        }
    }
    return kept;
}

}  // namespace

int count_bends(std::span<const Vec3> points, double noise_fraction) {
    const auto runs = surviving_runs(points, noise_fraction);
    if (runs.empty()) return 0;
    if (runs.size() == 1) return runs.front().vertical ? 0 : 1;
    return static_cast<int>(runs.size());
}

int count_bends(const ArteryEdge& edge, const VesselGraph& graph, double noise_fraction) {
    const auto pts = graph.points(edge);
    return count_bends(pts, noise_fraction);
}

int first_lateral_sign(std::span<const Vec3> points, double noise_fraction) {
    for (const auto& r : surviving_runs(points, noise_fraction)) {
        if (!r.vertical) return r.first_sign;
    }
    return 0;
}

}  // namespace cerebro
