#include "cerebro/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cerebro {

void LayoutConfig::validate() const {
    const std::pair<const char*, double> positive[] = {
        {"layer_height", layer_height},
        {"cow_baseline_y", cow_baseline_y},
        {"band_gutter", band_gutter},
        {"canvas_width", canvas_width},
        {"stroke_min", stroke_min},
        {"stroke_max", stroke_max},
        {"carotid_band_height", carotid_band_height},
        {"carotid_amplitude", carotid_amplitude},
        {"acomm_arc_rise", acomm_arc_rise},
        {"pcomm_arc_drop", pcomm_arc_drop},
        {"cow_ring_half_width", cow_ring_half_width},
    };
    for (const auto& [name, v] : positive) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument(std::string(name) + " must be positive");
        }
    }
    if (!(stroke_min < stroke_max)) throw std::invalid_argument("stroke_min must be below stroke_max");
    if (!(bend_noise_fraction >= 0.0 && bend_noise_fraction < 1.0)) {
        throw std::invalid_argument("bend_noise_fraction must be in [0, 1)");
    }
    if (corpus_radius_lo < 0.0 || corpus_radius_hi < 0.0) {
        throw std::invalid_argument("corpus radius bounds must be non-negative");
    }
    if (corpus_radius_lo > 0.0 && corpus_radius_hi > 0.0 && !(corpus_radius_lo < corpus_radius_hi)) {
        throw std::invalid_argument("corpus_radius_lo must be below corpus_radius_hi");
    }
}

const Band* SlotAssignment::band(const ArteryLabel& label) const {
    for (const auto& b : bands) {
        if (b.label == label) return &b;
    }
    return nullptr;
}

const EdgePath* LayoutScene::edge(EdgeId id) const {
    for (const auto& e : edges) {
        if (e.edge_id == id) return &e;
    }
    return nullptr;
}

const SceneNode* LayoutScene::node(NodeId id) const {
    for (const auto& n : nodes) {
        if (n.id == id) return &n;
    }
    return nullptr;
}

namespace {

using K = ArteryLabel::Kind;

double side_sign(Side s) { return s == Side::Left ? -1.0 : 1.0; }

// Straight cubic with evenly spaced control points.
CubicBezier straight(Vec2 a, Vec2 b) {
    const Vec2 d = b - a;
    return {{a, a + d * (1.0 / 3.0), a + d * (2.0 / 3.0), b}};
}

// Tree edge arc: control points at 1/3 and 2/3 of the vertical span, pushed a
// quarter of the horizontal span toward the child.
CubicBezier tree_arc(Vec2 a, Vec2 b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    return {{a, {a.x + dx * (1.0 / 3.0 + 0.25), a.y + dy / 3.0}, {a.x + dx * (2.0 / 3.0 + 0.25), a.y + 2.0 * dy / 3.0}, b}};
}

// Vertical-first lead from an attachment to a point on the baseline.
CubicBezier connector(Vec2 a, Vec2 b) {
    const double dy = b.y - a.y;
    if (std::abs(dy) < 1e-12) return straight(a, b);
    return {{a, {a.x, a.y + dy / 3.0}, {b.x, a.y + 2.0 * dy / 3.0}, b}};
}

CubicBezier reversed(const CubicBezier& c) { return {{c.p[3], c.p[2], c.p[1], c.p[0]}}; }

int leaf_count(const SubTree& tree, const VesselGraph& g, EdgeId root) {
    std::set<EdgeId> members(tree.edges.begin(), tree.edges.end());
    int leaves = 0;
    std::vector<EdgeId> stack{root};
    while (!stack.empty()) {
        const EdgeId e = stack.back();
        stack.pop_back();
        bool has_child = false;
        for (EdgeId c : g.out_edges(g.edge(e).to)) {
            if (members.count(c)) {
                has_child = true;
                stack.push_back(c);
            }
        }
        if (!has_child) ++leaves;
    }
    return leaves;
}

int tree_leaves(const SubTree& tree, const VesselGraph& g) {
    int n = 0;
    for (EdgeId r : tree.root_edges) n += leaf_count(tree, g, r);
    return std::max(1, n);
}

struct RingGeometry {
    std::map<NodeId, double> u;  // distance from the midline, outward positive
    std::map<NodeId, Side> side;
};

double offset(const LabeledNetwork& net, NodeId n, Side s) {
    const double lat = net.graph().node_position(n).x - net.midline_lateral();
    return s == Side::Left ? -lat : lat;
}

void interpolate(const LabeledNetwork& net, const std::vector<EdgeId>& path, NodeId start, double u0, double u1,
                 Side s, RingGeometry& out) {
    const VesselGraph& g = net.graph();
    double total = 0.0;
    for (EdgeId e : path) total += g.edge(e).chain_length;
    double acc = 0.0;
    NodeId cur = start;
    for (EdgeId id : path) {
        const auto& e = g.edge(id);
        acc += e.chain_length;
        const NodeId next = e.from == cur ? e.to : e.from;
        const double f = total > 0.0 ? acc / total : 1.0;
        if (!out.u.count(next)) {
            out.u[next] = u0 + (u1 - u0) * f;
            out.side[next] = s;
        }
        cur = next;
    }
}

RingGeometry ring_geometry(const LabeledNetwork& net, const LayoutConfig& cfg) {
    RingGeometry out;
    const CowRing& ring = net.ring();
    if (!ring.ba_bifurcation) return out;
    const NodeId B = *ring.ba_bifurcation;
    out.u[B] = 0.0;
    out.side[B] = Side::None;

    double reach = 0.0;
    for (Side s : {Side::Left, Side::Right}) {
        const CowSide& cs = ring.side(s);
        for (const auto& n : {cs.pca_junction, cs.ic_junction, cs.carotid_terminus}) {
            if (n) reach = std::max(reach, offset(net, *n, s));
        }
    }
    const double scale = reach > 0.0 ? cfg.cow_ring_half_width / reach : 1.0;
    const double g = cfg.band_gutter;

    for (Side s : {Side::Left, Side::Right}) {
        const CowSide& cs = ring.side(s);
        double u_j = 0.0;
        if (cs.pca_junction) {
            u_j = std::max(offset(net, *cs.pca_junction, s) * scale, g);
            out.u[*cs.pca_junction] = u_j;
            out.side[*cs.pca_junction] = s;
        }
        if (!cs.ic_junction) continue;
        const double floor_c = cs.pca_junction ? u_j + g / 2.0 : g;
        const double u_c = std::max(offset(net, *cs.ic_junction, s) * scale, floor_c);
        out.u[*cs.ic_junction] = u_c;
        out.side[*cs.ic_junction] = s;
        double u_t = u_c;
        if (cs.carotid_terminus && *cs.carotid_terminus != *cs.ic_junction) {
            u_t = std::max(offset(net, *cs.carotid_terminus, s) * scale, u_c + g / 2.0);
            out.u[*cs.carotid_terminus] = u_t;
            out.side[*cs.carotid_terminus] = s;
        }
        const NodeId j = cs.pca_junction.value_or(B);
        if (cs.posterior && cs.pca_junction) interpolate(net, *cs.posterior, B, 0.0, u_j, s, out);
        if (cs.pcomm) interpolate(net, *cs.pcomm, j, u_j, u_c, s, out);
        if (cs.carotid && cs.carotid_terminus) interpolate(net, *cs.carotid, *cs.ic_junction, u_c, u_t, s, out);
    }
    return out;
}

// Band order key: trees whose attachment sits closer to the midline along
// the ring get inner bands, which keeps root edges from crossing.
struct BandKey {
    double rank;
    double along;
    ArteryLabel label;
    bool operator<(const BandKey& o) const {
        if (rank != o.rank) return rank < o.rank;
        if (along != o.along) return along < o.along;
        return label < o.label;
    }
};

BandKey band_key(const LabeledNetwork& net, const SubTree* tree, const ArteryLabel& label, const RingGeometry& ring) {
    switch (label.kind) {
        case K::PCA: return {1.0, 0.0, label};
        case K::ACA: return {2.0, 0.0, label};
        case K::MCA: return {2.2, 0.0, label};
        default: break;
    }
    const NodeId a = tree->attachment;
    const CowRing& r = net.ring();
    const CowSide& cs = r.side(label.side);
    if (r.ba_bifurcation && a == *r.ba_bifurcation) return {0.0, 0.0, label};
    if (cs.carotid_terminus && a == *cs.carotid_terminus) return {2.5, 0.0, label};
    if (const auto it = ring.u.find(a); it != ring.u.end()) {
        const bool before_pca = !cs.pca_junction || it->second < ring.u.at(*cs.pca_junction);
        return {before_pca ? 0.5 : 1.5, it->second, label};
    }
    // Off the ring: order by height of the attachment, highest first.
    return {3.0, -net.graph().node_position(a).y, label};
}

}  // namespace

std::map<NodeId, double> ring_anchors(const LabeledNetwork& network, const LayoutConfig& config) {
    const auto geo = ring_geometry(network, config);
    std::map<NodeId, double> out;
    for (const auto& [n, u] : geo.u) out[n] = config.midline() + side_sign(geo.side.at(n)) * u;
    if (network.ring().ba_bifurcation) out[*network.ring().ba_bifurcation] = config.midline();
    return out;
}

SlotAssignment assign_slots(const LabeledNetwork& network, const LayoutConfig& config) {
    const auto geo = ring_geometry(network, config);
    const VesselGraph& g = network.graph();
    SlotAssignment out;
    std::map<Side, std::vector<std::pair<BandKey, Band>>> per_side;
    for (Side s : {Side::Left, Side::Right}) {
        for (K k : {K::PCA, K::ACA, K::MCA}) {
            const auto label = ArteryLabel::named(k, s);
            const SubTree* t = network.tree(label);
            Band b{label, s, 0, 0, t ? tree_leaves(*t, g) : 1};
            per_side[s].push_back({band_key(network, t, label, geo), b});
        }
    }
    for (const auto& [label, t] : network.unlabeled_trees()) {
        const Side s = label.side == Side::Right ? Side::Right : Side::Left;
        per_side[s].push_back({band_key(network, &t, label, geo), Band{label, s, 0, 0, tree_leaves(t, g)}});
    }
    const double half = config.canvas_width / 2.0;
    const double gap = config.band_gutter;
    double unit = std::numeric_limits<double>::infinity();
    for (auto& [s, bands] : per_side) {
        std::sort(bands.begin(), bands.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        int leaves = 0;
        for (const auto& kb : bands) leaves += kb.second.leaves;
        unit = std::min(unit, (half - gap * (static_cast<double>(bands.size()) + 1.0)) / leaves);
    }
    if (!(unit > 0.0)) throw std::invalid_argument("canvas too narrow for the tree bands");
    out.unit = unit;
    const double mid = config.midline();
    for (Side s : {Side::Left, Side::Right}) {
        double inner = gap;
        for (auto& [key, b] : per_side[s]) {
            const double w = unit * b.leaves;
            if (s == Side::Left) {
                b.hi = mid - inner;
                b.lo = b.hi - w;
            } else {
                b.lo = mid + inner;
                b.hi = b.lo + w;
            }
            inner += w + gap;
            out.bands.push_back(b);
        }
    }
    return out;
}

ChildOrder order_subtrees(const SubTree& tree, const VesselGraph& g) {
    const std::set<EdgeId> members(tree.edges.begin(), tree.edges.end());
    std::map<EdgeId, std::pair<double, int>> sums;  // lateral sum, position count
    std::map<EdgeId, int> leaves;
    // Reverse preorder visits children before parents.
    for (auto it = tree.edges.rbegin(); it != tree.edges.rend(); ++it) {
        const auto& e = g.edge(*it);
        double sum = 0.0;
        int count = 0;
        for (int rec : e.segment_ids) {
            sum += g.forest()->record(rec).position.x;
            ++count;
        }
        int lv = 0;
        for (EdgeId c : g.out_edges(e.to)) {
            if (!members.count(c)) continue;
            sum += sums.at(c).first;
            count += sums.at(c).second;
            lv += leaves.at(c);
        }
        sums[e.id] = {sum, count};
        leaves[e.id] = std::max(lv, 1);
    }
    ChildOrder order;
    std::vector<NodeId> nodes{tree.attachment};
    for (EdgeId id : tree.edges) nodes.push_back(g.edge(id).to);
    for (NodeId n : nodes) {
        std::vector<EdgeId> kids;
        for (EdgeId c : g.out_edges(n)) {
            if (members.count(c)) kids.push_back(c);
        }
        if (kids.empty()) continue;
        const auto mean = [&](EdgeId e) { return sums.at(e).first / sums.at(e).second; };
        std::stable_sort(kids.begin(), kids.end(), [&](EdgeId a, EdgeId b) {
            const double ma = mean(a);
            const double mb = mean(b);
            if (ma != mb) return ma < mb;
            return leaves.at(a) > leaves.at(b);
        });
        order[n] = std::move(kids);
    }
    return order;
}

TreeLayout layout_trees(const LabeledNetwork& network, const SlotAssignment& slots,
                        const std::map<ArteryLabel, ChildOrder>& orders, const std::map<NodeId, Vec2>& anchors,
                        const LayoutConfig& config) {
    const VesselGraph& g = network.graph();
    const double base = config.cow_baseline_y;
    const double mid = config.midline();
    TreeLayout out;

    const auto place = [&](const SubTree& tree) {
        const Band* band = slots.band(tree.label);
        if (!band) return;
        const auto& order = orders.at(tree.label);
        const Side s = band->side;
        const double inner = s == Side::Left ? band->hi : band->lo;
        Vec2 anchor{inner, base};
        if (const auto it = anchors.find(tree.attachment); it != anchors.end()) anchor = it->second;
        const bool on_baseline = std::abs(anchor.y - base) < 1e-9;
        const bool in_hemisphere = side_sign(s) * (anchor.x - mid) >= config.band_gutter / 2.0;
        const bool lead = !(on_baseline && in_hemisphere);
        const Vec2 root = lead ? Vec2{inner, base} : anchor;
        if (!lead) {
            out.positions[tree.attachment] = anchor;
            out.depths[tree.attachment] = 0;
        }

        struct Item {
            NodeId node;
            Vec2 pos;
            double lo;
            double hi;
            int depth;
        };
        std::vector<Item> stack{{tree.attachment, root, band->lo, band->hi, 0}};
        while (!stack.empty()) {
            const Item item = stack.back();
            stack.pop_back();
            const auto kids_it = order.find(item.node);
            if (kids_it == order.end()) continue;
            const auto& kids = kids_it->second;
            std::vector<int> lv;
            int total = 0;
            for (EdgeId c : kids) {
                lv.push_back(leaf_count(tree, g, c));
                total += lv.back();
            }
            int acc = 0;
            std::vector<Item> next;
            for (std::size_t i = 0; i < kids.size(); ++i) {
                const double lo = item.lo + (item.hi - item.lo) * acc / total;
                acc += lv[i];
                const double hi = item.lo + (item.hi - item.lo) * acc / total;
                const auto& e = g.edge(kids[i]);
                const int depth = item.depth + 1;
                const Vec2 pos{(lo + hi) / 2.0, base - depth * config.layer_height};
                out.positions[e.to] = pos;
                out.depths[e.to] = depth;

                EdgePath p;
                p.edge_id = e.id;
                p.label = tree.label;
                p.segment_ids = e.segment_ids;
                if (item.depth == 0 && lead) {
                    p.connector = true;
                    p.path.push_back(connector(anchor, root));
                }
                p.path.push_back(tree_arc(item.pos, pos));
                out.paths.push_back(std::move(p));
                next.push_back({e.to, pos, lo, hi, depth});
            }
            for (auto it = next.rbegin(); it != next.rend(); ++it) stack.push_back(*it);
        }
    };
    for (const auto& [_, t] : network.cerebral_trees()) place(t);
    for (const auto& [_, t] : network.unlabeled_trees()) place(t);
    return out;
}

std::vector<CubicBezier> inflow_curve(Vec2 top, double length, int bends, int sign, const LayoutConfig& config) {
    const int n = std::max(1, bends);
    const double per = length / n;
    const double amp = bends == 0 ? 0.0 : std::min(config.carotid_amplitude, per / 4.0);
    if (amp <= 0.0 || per <= 0.0) return {straight(top, top + Vec2{0.0, length})};

    const double s0 = sign < 0 ? -1.0 : 1.0;
    const auto half_wave = [amp](Vec2 at, double d, double s) {
        const double bulge = s * 4.0 / 3.0 * amp;
        return CubicBezier{{at, {at.x + bulge, at.y + d / 3.0}, {at.x + bulge, at.y + 2.0 * d / 3.0}, {at.x, at.y + d}}};
    };
    // Arc length grows with the vertical step; bisect for the target length.
    double lo = 0.0;
    double hi = per;
    for (int i = 0; i < 80; ++i) {
        const double m = 0.5 * (lo + hi);
        if (arc_length(half_wave({0, 0}, m, 1.0)) < per) {
            lo = m;
        } else {
            hi = m;
        }
    }
    const double d = 0.5 * (lo + hi);
    std::vector<CubicBezier> out;
    Vec2 at = top;
    for (int k = 0; k < n; ++k) {
        out.push_back(half_wave(at, d, k % 2 == 0 ? s0 : -s0));
        at = out.back().p[3];
    }
    return out;
}

InflowLayout abstract_inflow(const LabeledNetwork& network, const std::map<NodeId, Vec2>& ring_positions,
                             const LayoutConfig& config) {
    const VesselGraph& g = network.graph();
    InflowLayout out;
    double longest = 0.0;
    for (const auto& [_, chain] : network.inflow()) {
        double len = 0.0;
        for (EdgeId e : chain) len += g.edge(e).chain_length;
        longest = std::max(longest, len);
    }
    for (const auto& [label, chain] : network.inflow()) {
        if (chain.empty()) continue;
        const bool upward = label.kind == K::BA;  // data runs toward the ring
        const auto& first = g.edge(chain.front());
        const NodeId start = upward ? first.to : first.from;
        const auto it = ring_positions.find(start);
        if (it == ring_positions.end()) continue;
        Vec2 top = it->second;
        for (EdgeId id : chain) {
            const auto& e = g.edge(id);
            auto pts = g.points(e);
            if (upward) std::reverse(pts.begin(), pts.end());
            int bends = 0;
            int sign = 0;
            try {
                bends = count_bends(pts, config.bend_noise_fraction);
                sign = first_lateral_sign(pts, config.bend_noise_fraction);
            } catch (const DegenerateChain&) {
            }
            const double arc = longest > 0.0 ? config.carotid_band_height * e.chain_length / longest : 0.0;
            auto curve = inflow_curve(top, arc, bends, sign, config);
            const Vec2 bottom = curve.back().p[3];
            out.positions[upward ? e.from : e.to] = bottom;
            if (upward) {
                std::reverse(curve.begin(), curve.end());
                for (auto& c : curve) c = reversed(c);
            }
            EdgePath p;
            p.edge_id = id;
            p.label = label;
            p.segment_ids = e.segment_ids;
            p.path = std::move(curve);
            out.paths.push_back(std::move(p));
            top = bottom;
        }
    }
    return out;
}

RingLayout layout_cow(const LabeledNetwork& network, const LayoutConfig& config) {
    if (!network.ring_closed()) throw CannotClose({"closed ring"});
    const VesselGraph& g = network.graph();
    RingLayout out;
    for (const auto& [n, x] : ring_anchors(network, config)) out.positions[n] = {x, config.cow_baseline_y};
    for (EdgeId id : network.cow_cycle()) {
        const auto& e = g.edge(id);
        const Vec2 a = out.positions.at(e.from);
        const Vec2 b = out.positions.at(e.to);
        const auto section = *network.ring_section(id);
        CubicBezier c = straight(a, b);
        if (section == RingSection::PComm || section == RingSection::AComm) {
            const double h = section == RingSection::PComm ? 4.0 / 3.0 * config.pcomm_arc_drop
                                                           : -4.0 / 3.0 * config.acomm_arc_rise;
            c.p[1].y += h;
            c.p[2].y += h;
        }
        EdgePath p;
        p.edge_id = id;
        p.label = network.label(id);
        p.segment_ids = e.segment_ids;
        p.dashed = e.dashed;
        p.path.push_back(c);
        out.paths.push_back(std::move(p));
    }
    return out;
}

WidthScale scale_widths(const LabeledNetwork& network, const LayoutConfig& config) {
    WidthScale out;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& e : network.graph().edges()) {
        if (e.dashed) continue;
        lo = std::min(lo, e.mean_radius);
        hi = std::max(hi, e.mean_radius);
    }
    if (config.corpus_radius_lo > 0.0 && config.corpus_radius_hi > 0.0) {
        lo = config.corpus_radius_lo;
        hi = config.corpus_radius_hi;
    }
    if (!std::isfinite(lo)) lo = hi = 0.0;
    out.radius_lo = lo;
    out.radius_hi = hi;
    const double span = config.stroke_max - config.stroke_min;
    for (const auto& e : network.graph().edges()) {
        double w = (config.stroke_min + config.stroke_max) / 2.0;
        if (hi > lo) w = config.stroke_min + (e.mean_radius - lo) / (hi - lo) * span;
        out.widths[e.id] = std::clamp(w, config.stroke_min, config.stroke_max);
    }
    return out;
}

LayoutScene compose_scene(const LabeledNetwork& network, const LayoutConfig& config, const SceneOptions& options) {
    config.validate();
    const VesselGraph& g = network.graph();
    const RingLayout ring = layout_cow(network, config);
    const InflowLayout inflow = abstract_inflow(network, ring.positions, config);
    const SlotAssignment slots = assign_slots(network, config);
    std::map<ArteryLabel, ChildOrder> orders;
    for (const auto& [label, t] : network.cerebral_trees()) orders[label] = order_subtrees(t, g);
    for (const auto& [label, t] : network.unlabeled_trees()) orders[label] = order_subtrees(t, g);
    std::map<NodeId, Vec2> anchors = ring.positions;
    anchors.insert(inflow.positions.begin(), inflow.positions.end());
    const TreeLayout trees = layout_trees(network, slots, orders, anchors, config);
    const WidthScale widths = scale_widths(network, config);

    LayoutScene scene;
    scene.scan_id = options.scan_id;
    scene.config = config;
    scene.radius_lo = widths.radius_lo;
    scene.radius_hi = widths.radius_hi;

    std::map<EdgeId, EdgePath> paths;
    for (const auto* group : {&ring.paths, &inflow.paths, &trees.paths}) {
        for (const auto& p : *group) {
            if (!paths.emplace(p.edge_id, p).second) {
                throw std::logic_error("edge " + std::to_string(p.edge_id) + " laid out twice");
            }
        }
    }
    double max_flow = 0.0;
    if (options.flow) {
        for (const auto& [_, f] : *options.flow) max_flow = std::max(max_flow, f);
    }
    for (const auto& e : g.edges()) {
        const auto it = paths.find(e.id);
        if (it == paths.end()) throw std::logic_error("edge " + std::to_string(e.id) + " has no layout");
        EdgePath p = it->second;
        p.label = network.label(e.id);
        p.dashed = e.dashed;
        p.stroke_width = widths.widths.at(e.id);
        if (options.flow) {
            const auto f = options.flow->find(e.id);
            p.flow = f == options.flow->end() ? 0.0 : f->second;
        }
        p.color = color_for_edge(p.label, options.scheme, p.flow, max_flow);
        scene.edges.push_back(std::move(p));
    }

    std::map<NodeId, SceneNode> nodes;
    for (const auto* group : {&ring.positions, &inflow.positions}) {
        for (const auto& [n, pos] : *group) nodes[n] = {n, pos, -1};
    }
    for (const auto& [n, pos] : trees.positions) nodes[n] = {n, pos, trees.depths.at(n)};
    for (const auto& e : g.edges()) {
        for (NodeId n : {e.from, e.to}) {
            if (!nodes.count(n)) throw std::logic_error("node " + std::to_string(n) + " has no layout");
        }
    }
    for (const auto& [_, n] : nodes) scene.nodes.push_back(n);

    for (const auto& view : projection_views()) scene.projections[view];
    for (const auto& e : g.edges()) {
        if (e.dashed) continue;
        Projection front{e.id, {}}, side{e.id, {}}, top{e.id, {}};
        for (const auto& p : g.points(e)) {
            front.polyline.push_back({p.x, p.y});
            side.polyline.push_back({p.z, p.y});
            top.polyline.push_back({p.x, p.z});
        }
        scene.projections["front"].push_back(std::move(front));
        scene.projections["side"].push_back(std::move(side));
        scene.projections["top"].push_back(std::move(top));
    }
    return scene;
}

// ---------------------------------------------------------------------------
// Layout property checks

bool LayoutCheck::ok() const { return all().empty(); }

std::vector<std::string> LayoutCheck::all() const {
    std::vector<std::string> out;
    for (const auto* v : {&layer_alignment, &hemisphere_separation, &slot_order, &planarity, &monotonicity,
                          &ring_baseline}) {
        out.insert(out.end(), v->begin(), v->end());
    }
    return out;
}

namespace {

constexpr int kFlattenSteps = 24;
constexpr double kTol = 1e-9;

struct Flat {
    EdgeId id;
    NodeId from;
    NodeId to;
    bool connector;
    std::vector<std::vector<Vec2>> pieces;  // one polyline per cubic
    double x0, y0, x1, y1;
};

Flat flatten_path(const EdgePath& p, const ArteryEdge& e) {
    Flat f{p.edge_id, e.from, e.to, p.connector, {}, std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity()};
    for (const auto& c : p.path) {
        f.pieces.push_back(flatten(c, kFlattenSteps));
        for (const auto& q : f.pieces.back()) {
            f.x0 = std::min(f.x0, q.x);
            f.y0 = std::min(f.y0, q.y);
            f.x1 = std::max(f.x1, q.x);
            f.y1 = std::max(f.y1, q.y);
        }
    }
    return f;
}

bool near(Vec2 a, Vec2 b) { return (a - b).norm() < 1e-6; }

}  // namespace

LayoutCheck check_layout(const LayoutScene& scene, const LabeledNetwork& network) {
    LayoutCheck out;
    const VesselGraph& g = network.graph();
    const LayoutConfig& cfg = scene.config;
    const double mid = cfg.midline();
    const double base = cfg.cow_baseline_y;

    std::map<int, std::pair<double, double>> layer_y;
    for (const auto& n : scene.nodes) {
        if (n.depth < 0) continue;
        auto [it, fresh] = layer_y.emplace(n.depth, std::make_pair(n.position.y, n.position.y));
        if (!fresh) {
            it->second.first = std::min(it->second.first, n.position.y);
            it->second.second = std::max(it->second.second, n.position.y);
        }
    }
    for (const auto& [d, range] : layer_y) {
        if (range.second - range.first >= kTol) {
            out.layer_alignment.push_back("depth " + std::to_string(d) + " spans " +
                                          std::to_string(range.second - range.first) + " px");
        }
    }

    std::map<Side, std::vector<Flat>> tree_edges;
    std::map<ArteryLabel, std::pair<double, double>> extents;  // distance from midline
    for (const auto& p : scene.edges) {
        const auto role = network.role(p.edge_id);
        const auto& e = g.edge(p.edge_id);
        if (role == EdgeRole::Ring) {
            if (std::abs(p.start().y - base) >= kTol || std::abs(p.end().y - base) >= kTol) {
                out.ring_baseline.push_back("ring edge " + std::to_string(p.edge_id) + " leaves the baseline");
            }
            continue;
        }
        // Directed edges run vertically and monotonically.
        {
            int dir = 0;
            bool ok = true;
            double prev = p.start().y;
            for (const auto& c : p.path) {
                for (int i = 1; i <= 64 && ok; ++i) {
                    const double y = c.at(i / 64.0).y;
                    const double dy = y - prev;
                    if (std::abs(dy) > kTol) {
                        const int s = dy > 0 ? 1 : -1;
                        if (dir == 0) dir = s;
                        if (s != dir) ok = false;
                    }
                    prev = y;
                }
            }
            if (!ok) out.monotonicity.push_back("edge " + std::to_string(p.edge_id) + " is not vertically monotone");
        }
        if (role == EdgeRole::Inflow) continue;

        const Side s = p.label.side == Side::Right ? Side::Right : Side::Left;
        const double sg = side_sign(s);
        Flat f = flatten_path(p, e);
        const bool root_edge = !g.parent_edge(e.id) ||
                               network.owning_tree(e.id)->attachment == e.from;
        for (std::size_t k = 0; k < f.pieces.size(); ++k) {
            if (f.connector && k == 0) continue;
            for (const auto& q : f.pieces[k]) {
                if (sg * (q.x - mid) <= cfg.band_gutter / 2.0) {
                    out.hemisphere_separation.push_back("edge " + std::to_string(p.edge_id) + " reaches x=" +
                                                        std::to_string(q.x));
                    break;
                }
                if (!root_edge && p.label.is_cerebral_tree()) {
                    auto& ext = extents[p.label];
                    const double u = sg * (q.x - mid);
                    if (ext.first == 0.0 && ext.second == 0.0) ext = {u, u};
                    ext.first = std::min(ext.first, u);
                    ext.second = std::max(ext.second, u);
                }
            }
        }
        tree_edges[s].push_back(std::move(f));
    }

    for (Side s : {Side::Left, Side::Right}) {
        const ArteryLabel order[] = {ArteryLabel::named(K::PCA, s), ArteryLabel::named(K::ACA, s),
                                     ArteryLabel::named(K::MCA, s)};
        for (int i = 0; i < 3; ++i) {
            if (const SubTree* t = network.tree(order[i])) {
                for (EdgeId id : t->edges) {
                    const auto* n = scene.node(g.edge(id).to);
                    if (!n) continue;
                    const double u = side_sign(s) * (n->position.x - mid);
                    auto& ext = extents[order[i]];
                    if (ext.first == 0.0 && ext.second == 0.0) ext = {u, u};
                    ext.first = std::min(ext.first, u);
                    ext.second = std::max(ext.second, u);
                }
            }
        }
        for (int i = 0; i + 1 < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                const auto a = extents.find(order[i]);
                const auto b = extents.find(order[j]);
                if (a == extents.end() || b == extents.end()) continue;
                if (!(a->second.second < b->second.first)) {
                    out.slot_order.push_back(order[i].name() + " overlaps " + order[j].name());
                }
            }
        }

        auto& flats = tree_edges[s];
        for (std::size_t i = 0; i < flats.size(); ++i) {
            for (std::size_t j = i + 1; j < flats.size(); ++j) {
                const Flat& a = flats[i];
                const Flat& b = flats[j];
                if (a.x1 < b.x0 || b.x1 < a.x0 || a.y1 < b.y0 || b.y1 < a.y0) continue;
                std::vector<Vec2> shared;
                for (NodeId na : {a.from, a.to}) {
                    for (NodeId nb : {b.from, b.to}) {
                        if (na != nb) continue;
                        if (const auto* n = scene.node(na)) shared.push_back(n->position);
                    }
                }
                const bool same_lead = a.connector && b.connector && a.from == b.from;
                if (same_lead) {
                    shared.push_back(a.pieces.front().back());
                    shared.push_back(a.pieces.front().front());
                }
                bool crossed = false;
                for (std::size_t pa = 0; pa < a.pieces.size() && !crossed; ++pa) {
                    for (std::size_t pb = 0; pb < b.pieces.size() && !crossed; ++pb) {
                        if (same_lead && pa == 0 && pb == 0) continue;
                        const auto& la = a.pieces[pa];
                        const auto& lb = b.pieces[pb];
                        for (std::size_t u = 1; u < la.size() && !crossed; ++u) {
                            for (std::size_t v = 1; v < lb.size() && !crossed; ++v) {
                                if (std::max(la[u - 1].x, la[u].x) < std::min(lb[v - 1].x, lb[v].x) ||
                                    std::max(lb[v - 1].x, lb[v].x) < std::min(la[u - 1].x, la[u].x) ||
                                    std::max(la[u - 1].y, la[u].y) < std::min(lb[v - 1].y, lb[v].y) ||
                                    std::max(lb[v - 1].y, lb[v].y) < std::min(la[u - 1].y, la[u].y)) {
                                    continue;
                                }
                                Vec2 w;
                                if (!segments_intersect(la[u - 1], la[u], lb[v - 1], lb[v], &w)) continue;
                                if (std::any_of(shared.begin(), shared.end(), [&](Vec2 q) { return near(q, w); })) {
                                    continue;
                                }
                                crossed = true;
                            }
                        }
                    }
                }
                if (crossed) {
                    out.planarity.push_back("edges " + std::to_string(a.id) + " and " + std::to_string(b.id) +
                                            " cross");
                }
            }
        }
    }
    return out;
}

}  // namespace cerebro
