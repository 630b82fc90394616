#include "cerebro/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace cerebro {

namespace {

std::string describe(const std::vector<ClassificationFailure>& failures) {
    std::string out = "classification failed";
    for (const auto& f : failures) {
        out += "; stage " + std::to_string(f.stage) + " at node " + std::to_string(f.node);
        if (f.side != Side::None) out += std::string(" (") + side_code(f.side) + ")";
        if (!f.message.empty()) out += ": " + f.message;
    }
    return out;
}

struct SubtreeStats {
    Vec3 weighted;  // sum of centroid * length
    double length = 0.0;
    double min_y = std::numeric_limits<double>::infinity();
    NodeId min_node = 0;

    Vec3 centroid() const { return length > 0 ? weighted * (1.0 / length) : weighted; }
};

class Classifier {
public:
    Classifier(const VesselGraph& g, const ClassifyConfig& cfg) : g_(g), cfg_(cfg) {
        // Children always carry larger ids than their parent edge.
        std::vector<EdgeId> ids;
        for (const auto& e : g_.edges()) {
            if (!e.dashed) ids.push_back(e.id);
        }
        std::sort(ids.rbegin(), ids.rend());
        for (EdgeId id : ids) {
            const auto& e = g_.edge(id);
            SubtreeStats s;
            s.weighted = e.centroid * e.chain_length;
            s.length = e.chain_length;
            for (int rec : e.segment_ids) {
                const double y = g_.forest()->record(rec).position.y;
                if (y < s.min_y) {
                    s.min_y = y;
                    s.min_node = rec;
                }
            }
            for (EdgeId c : g_.out_edges(e.to)) {
                if (c == id) continue;
                const auto& cs = stats_.at(c);
                s.weighted = s.weighted + cs.weighted;
                s.length += cs.length;
                if (cs.min_y < s.min_y) {
                    s.min_y = cs.min_y;
                    s.min_node = cs.min_node;
                }
            }
            stats_[id] = s;
        }
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto& r : g_.forest()->records()) {
            lo = std::min(lo, r.position.y);
            hi = std::max(hi, r.position.y);
        }
        extent_ = hi - lo;
    }

    Classification run() {
        Classification out;
        const NodeId root = g_.root_node();
        const auto root_edges = g_.out_edges(root);
        if (root_edges.size() != 1) {
            out.failures.push_back({1, root, Side::None, "root does not start a single basilar chain"});
            return out;
        }
        const EdgeId ba = root_edges.front();
        const NodeId B = g_.edge(ba).to;
        if (children(B).empty()) {
            out.failures.push_back({1, B, Side::None, "basilar chain never bifurcates"});
            return out;
        }
        labels_[ba] = ArteryLabel::ba();
        const auto& ba_edge = g_.edge(ba);
        midline_ = ba_edge.centroid.x;

        std::map<Side, std::vector<EdgeId>> by_side;
        for (EdgeId c : children(B)) by_side[side_of(c)].push_back(c);
        for (Side s : {Side::Left, Side::Right}) {
            const auto& kids = by_side[s];
            if (kids.size() != 1) {
                out.failures.push_back({5, B, s,
                                        std::to_string(kids.size()) + " basilar branches on this side"});
                continue;
            }
            std::map<EdgeId, ArteryLabel> side_labels;
            if (auto f = label_side(kids.front(), s, side_labels)) {
                out.failures.push_back(*f);
            } else {
                labels_.insert(side_labels.begin(), side_labels.end());
            }
        }
        label_unreached();
        out.network.emplace(g_, labels_);
        return out;
    }

private:
    std::vector<EdgeId> children(NodeId n) const {
        std::vector<EdgeId> out;
        for (EdgeId c : g_.out_edges(n)) {
            if (g_.edge(c).to != n) out.push_back(c);
        }
        return out;
    }

    Side side_of(EdgeId subtree_root) const {
        return stats_.at(subtree_root).centroid().x < midline_ ? Side::Left : Side::Right;
    }

    void label_subtree(EdgeId root, ArteryLabel label, std::map<EdgeId, ArteryLabel>& out) const {
        out[root] = label;
        for (EdgeId d : g_.descendants(root)) out[d] = label;
    }

    std::optional<ClassificationFailure> label_side(EdgeId first, Side s, std::map<EdgeId, ArteryLabel>& out) const {
        using K = ArteryLabel::Kind;
        const NodeId J = g_.edge(first).to;
        auto at_j = children(J);
        if (at_j.size() < 2) return ClassificationFailure{2, J, s, "no PCA / P. Comm. bifurcation"};
        out[first] = ArteryLabel::named(K::PComm, s);

        const auto z = [&](EdgeId e) { return stats_.at(e).centroid().z; };
        const EdgeId pca = *std::min_element(at_j.begin(), at_j.end(), [&](EdgeId a, EdgeId b) { return z(a) < z(b); });
        const EdgeId pcomm = *std::max_element(at_j.begin(), at_j.end(), [&](EdgeId a, EdgeId b) { return z(a) < z(b); });
        label_subtree(pca, ArteryLabel::named(K::PCA, s), out);
        out[pcomm] = ArteryLabel::named(K::PComm, s);

        const NodeId C = g_.edge(pcomm).to;
        auto at_c = children(C);
        if (at_c.empty()) return ClassificationFailure{3, C, s, "P. Comm. ends without a junction"};
        const EdgeId ic = *std::min_element(at_c.begin(), at_c.end(), [&](EdgeId a, EdgeId b) {
            return stats_.at(a).min_y < stats_.at(b).min_y;
        });
        const double drop = g_.node_position(C).y - stats_.at(ic).min_y;
        if (!(drop > cfg_.ic_min_drop * extent_)) {
            return ClassificationFailure{3, C, s, "no descending internal carotid at the P. Comm. end"};
        }
        // IC path: from the junction down to the chain holding the lowest point.
        const NodeId lowest = stats_.at(ic).min_node;
        std::vector<EdgeId> candidates = g_.descendants(ic);
        candidates.push_back(ic);
        EdgeId holder = ic;
        for (EdgeId e : candidates) {
            const auto& segs = g_.edge(e).segment_ids;
            if (std::find(segs.begin(), segs.end(), lowest) != segs.end()) holder = e;
        }
        for (EdgeId e = holder;; e = *g_.parent_edge(e)) {
            out[e] = ArteryLabel::named(K::IC, s);
            if (e == ic) break;
        }
        std::erase(at_c, ic);

        NodeId T = C;
        std::vector<EdgeId> at_t = at_c;
        if (at_c.size() == 1) {
            out[at_c.front()] = ArteryLabel::named(K::ACA, s);
            T = g_.edge(at_c.front()).to;
            at_t = children(T);
        }
        if (at_t.size() < 2) return ClassificationFailure{4, T, s, "no ACA / MCA bifurcation"};
        const auto spread = [&](EdgeId e) { return std::abs(stats_.at(e).centroid().x - midline_); };
        const EdgeId aca =
            *std::min_element(at_t.begin(), at_t.end(), [&](EdgeId a, EdgeId b) { return spread(a) < spread(b); });
        const EdgeId mca =
            *std::max_element(at_t.begin(), at_t.end(), [&](EdgeId a, EdgeId b) { return spread(a) < spread(b); });
        if (aca == mca) return ClassificationFailure{4, T, s, "ACA and MCA cannot be told apart"};
        label_subtree(aca, ArteryLabel::named(K::ACA, s), out);
        label_subtree(mca, ArteryLabel::named(K::MCA, s), out);
        return std::nullopt;
    }

    void label_unreached() {
        std::map<Side, int> next_index;
        // Ids are preorder, so every unreached subtree root is seen before its descendants.
        for (const auto& e : g_.edges()) {
            if (e.dashed || labels_.count(e.id)) continue;
            const auto p = g_.parent_edge(e.id);
            if (p && labels_.at(*p).is_unlabeled()) {
                labels_[e.id] = labels_.at(*p);
                continue;
            }
            const Side s = side_of(e.id);
            labels_[e.id] = ArteryLabel::unlabeled(s, next_index[s]++);
        }
    }

    const VesselGraph& g_;
    const ClassifyConfig& cfg_;
    std::map<EdgeId, SubtreeStats> stats_;
    std::map<EdgeId, ArteryLabel> labels_;
    double extent_ = 0.0;
    double midline_ = 0.0;
};

}  // namespace

ClassificationFailed::ClassificationFailed(std::vector<ClassificationFailure> failures)
    : std::runtime_error(describe(failures)), failures_(std::move(failures)) {}

Classification classify_arteries(const VesselGraph& graph, const ClassifyConfig& config) {
    return Classifier(graph, config).run();
}

LabeledNetwork classify_arteries_strict(const VesselGraph& graph, const ClassifyConfig& config) {
    auto result = classify_arteries(graph, config);
    if (!result.ok()) throw ClassificationFailed(result.failures);
    return std::move(*result.network);
}

}  // namespace cerebro
