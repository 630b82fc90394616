#include "cerebro/network.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <numeric>

namespace cerebro {

namespace {

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += ", ";
        out += p;
    }
    return out;
}

// Data-tree edges from node `top` down to node `bottom`, top-first.
std::optional<std::vector<EdgeId>> walk_up(const VesselGraph& g, NodeId bottom, NodeId top) {
    std::vector<EdgeId> path;
    NodeId cur = bottom;
    while (cur != top) {
        const auto e = g.in_edge(cur);
        if (!e || g.edge(*e).from == cur) return std::nullopt;
        path.push_back(*e);
        cur = g.edge(*e).from;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

std::optional<EdgeId> dashed_between(const VesselGraph& g, NodeId a, NodeId b) {
    for (const auto& e : g.edges()) {
        if (!e.dashed) continue;
        if ((e.from == a && e.to == b) || (e.from == b && e.to == a)) return e.id;
    }
    return std::nullopt;
}

std::optional<std::vector<EdgeId>> ring_path(const VesselGraph& g, NodeId top, NodeId bottom) {
    if (auto p = walk_up(g, bottom, top)) return p;
    if (auto d = dashed_between(g, top, bottom)) return std::vector<EdgeId>{*d};
    return std::nullopt;
}

// Root edge(s) of a labeled edge set: members whose parent is not a member.
std::vector<EdgeId> roots_of(const VesselGraph& g, const std::vector<EdgeId>& members) {
    std::vector<EdgeId> roots;
    for (EdgeId e : members) {
        const auto p = g.parent_edge(e);
        if (!p || std::find(members.begin(), members.end(), *p) == members.end()) roots.push_back(e);
    }
    return roots;
}

bool connected(const VesselGraph& g, const std::vector<EdgeId>& members) {
    if (members.size() <= 1) return true;
    std::map<NodeId, NodeId> parent;
    std::function<NodeId(NodeId)> find = [&](NodeId n) {
        auto it = parent.find(n);
        if (it == parent.end()) {
            parent[n] = n;
            return n;
        }
        if (it->second == n) return n;
        const NodeId r = find(it->second);
        parent[n] = r;
        return r;
    };
    for (EdgeId id : members) {
        const auto& e = g.edge(id);
        const NodeId a = find(e.from);
        const NodeId b = find(e.to);
        if (a != b) parent[a] = b;
    }
    const NodeId r = find(g.edge(members.front()).from);
    return std::all_of(members.begin(), members.end(), [&](EdgeId id) { return find(g.edge(id).from) == r; });
}

double incident_mean_radius(const VesselGraph& g, NodeId node) {
    double sum = 0.0;
    int n = 0;
    if (const auto in = g.in_edge(node)) {
        sum += g.edge(*in).mean_radius;
        ++n;
    }
    for (EdgeId e : g.out_edges(node)) {
        if (g.edge(e).dashed) continue;
        sum += g.edge(e).mean_radius;
        ++n;
    }
    return n ? sum / n : 0.0;
}

double dashed_radius(const VesselGraph& g, NodeId a, NodeId b) {
    const double ra = incident_mean_radius(g, a);
    const double rb = incident_mean_radius(g, b);
    if (ra > 0 && rb > 0) return 0.5 * (ra + rb);
    return std::max(ra, rb) > 0 ? std::max(ra, rb) : 1.0;
}

}  // namespace

CannotClose::CannotClose(std::vector<std::string> missing)
    : std::runtime_error("cannot close the Circle of Willis, missing " + join(missing)),
      missing_(std::move(missing)) {}

LabeledNetwork::LabeledNetwork(VesselGraph graph, std::map<EdgeId, ArteryLabel> labels)
    : graph_(std::move(graph)), labels_(std::move(labels)) {
    derive();
}

ArteryLabel LabeledNetwork::label(EdgeId id) const {
    const auto it = labels_.find(id);
    if (it == labels_.end()) throw UnknownEdge(id);
    return it->second;
}

const SubTree* LabeledNetwork::tree(ArteryLabel label) const {
    if (auto it = cerebral_.find(label); it != cerebral_.end()) return &it->second;
    if (auto it = unlabeled_.find(label); it != unlabeled_.end()) return &it->second;
    return nullptr;
}

EdgeRole LabeledNetwork::role(EdgeId id) const {
    const auto it = roles_.find(id);
    if (it == roles_.end()) throw UnknownEdge(id);
    return it->second;
}

std::optional<RingSection> LabeledNetwork::ring_section(EdgeId id) const {
    const auto it = sections_.find(id);
    if (it == sections_.end()) return std::nullopt;
    return it->second;
}

const SubTree* LabeledNetwork::owning_tree(EdgeId id) const {
    const auto it = owner_.find(id);
    if (it == owner_.end()) return nullptr;
    return tree(it->second);
}

int LabeledNetwork::layer(EdgeId id) const {
    const auto it = layers_.find(id);
    return it == layers_.end() ? 0 : it->second;
}

void LabeledNetwork::derive() {
    const VesselGraph& g = graph_;
    for (const auto& e : g.edges()) {
        if (!labels_.count(e.id)) throw InvariantViolation("edge " + std::to_string(e.id) + " has no label");
    }
    for (const auto& [id, _] : labels_) {
        if (!g.has_edge(id)) throw UnknownEdge(id);
    }

    std::map<ArteryLabel, std::vector<EdgeId>> members;
    for (const auto& e : g.edges()) members[labels_.at(e.id)].push_back(e.id);
    for (const auto& [label, ids] : members) {
        if (!connected(g, ids)) {
            throw InvariantViolation("label " + label.name() + " is assigned to disconnected edge sets");
        }
    }

    // Basilar chain: rooted path ending at the basilar bifurcation.
    const auto ba_it = members.find(ArteryLabel::ba());
    if (ba_it == members.end()) throw InvariantViolation("no edge is labeled BA");
    {
        auto ba = ba_it->second;
        std::sort(ba.begin(), ba.end(), [&](EdgeId a, EdgeId b) { return g.tree_depth(a) < g.tree_depth(b); });
        for (std::size_t i = 1; i < ba.size(); ++i) {
            if (g.parent_edge(ba[i]) != ba[i - 1]) throw InvariantViolation("BA edges do not form a chain");
        }
        ring_.ba_bifurcation = g.edge(ba.back()).to;
        double len = 0.0;
        double lat = 0.0;
        for (EdgeId id : ba) {
            const auto& e = g.edge(id);
            len += e.chain_length;
            lat += e.centroid.x * e.chain_length;
        }
        midline_lateral_ = len > 0 ? lat / len : g.node_position(*ring_.ba_bifurcation).x;
        std::reverse(ba.begin(), ba.end());
        inflow_[ArteryLabel::ba()] = ba;
    }
    const NodeId B = *ring_.ba_bifurcation;

    const auto root_from = [&](ArteryLabel label) -> std::optional<NodeId> {
        const auto it = members.find(label);
        if (it == members.end()) return std::nullopt;
        std::vector<EdgeId> data;
        for (EdgeId id : it->second) {
            if (!g.edge(id).dashed) data.push_back(id);
        }
        if (data.empty()) return std::nullopt;
        const auto roots = roots_of(g, data);
        return g.edge(roots.front()).from;
    };

    for (Side s : {Side::Left, Side::Right}) {
        CowSide& cs = s == Side::Left ? ring_.left : ring_.right;
        const ArteryLabel ic = ArteryLabel::named(ArteryLabel::Kind::IC, s);
        if (auto it = members.find(ic); it != members.end()) {
            auto chain = it->second;
            std::sort(chain.begin(), chain.end(),
                      [&](EdgeId a, EdgeId b) { return g.tree_depth(a) < g.tree_depth(b); });
            for (std::size_t i = 1; i < chain.size(); ++i) {
                if (g.parent_edge(chain[i]) != chain[i - 1]) {
                    throw InvariantViolation(ic.name() + " edges do not form a chain");
                }
            }
            cs.ic_junction = g.edge(chain.front()).from;
            inflow_[ic] = chain;
        }
        cs.pca_junction = root_from(ArteryLabel::named(ArteryLabel::Kind::PCA, s));
        cs.carotid_terminus = root_from(ArteryLabel::named(ArteryLabel::Kind::MCA, s));
        if (!cs.carotid_terminus) cs.carotid_terminus = root_from(ArteryLabel::named(ArteryLabel::Kind::ACA, s));
        if (!cs.carotid_terminus) cs.carotid_terminus = cs.ic_junction;

        const NodeId posterior_end = cs.pca_junction.value_or(B);
        if (cs.pca_junction) {
            cs.posterior = ring_path(g, B, *cs.pca_junction);
        } else {
            cs.posterior = std::vector<EdgeId>{};
        }
        if (cs.ic_junction) cs.pcomm = ring_path(g, posterior_end, *cs.ic_junction);
        if (cs.ic_junction && cs.carotid_terminus) {
            if (*cs.carotid_terminus == *cs.ic_junction) {
                cs.carotid = std::vector<EdgeId>{};
            } else {
                cs.carotid = ring_path(g, *cs.ic_junction, *cs.carotid_terminus);
            }
        }
    }

    if (auto it = members.find(ArteryLabel::acomm()); it != members.end() && ring_.left.carotid_terminus &&
                                                      ring_.right.carotid_terminus) {
        const NodeId tl = *ring_.left.carotid_terminus;
        const NodeId tr = *ring_.right.carotid_terminus;
        for (EdgeId id : it->second) {
            const auto& e = g.edge(id);
            if ((e.from == tl && e.to == tr) || (e.from == tr && e.to == tl)) ring_.acomm = id;
        }
    }

    for (Side s : {Side::Left, Side::Right}) {
        const CowSide& cs = ring_.side(s);
        const auto mark = [&](const std::optional<std::vector<EdgeId>>& path, RingSection section) {
            if (!path) return;
            for (EdgeId id : *path) {
                if (sections_.count(id)) throw InvariantViolation("edge " + std::to_string(id) + " is on two ring paths");
                sections_[id] = section;
            }
        };
        mark(cs.posterior, RingSection::Posterior);
        mark(cs.pcomm, RingSection::PComm);
        mark(cs.carotid, RingSection::Carotid);
    }
    if (ring_.acomm) sections_[*ring_.acomm] = RingSection::AComm;
    for (const auto& [id, _] : sections_) {
        roles_[id] = EdgeRole::Ring;
        graph_.edge_mut(id).directedness = Directedness::Bidirectional;
    }

    for (const auto& [label, ids] : members) {
        std::vector<EdgeId> rest;
        for (EdgeId id : ids) {
            if (!sections_.count(id)) rest.push_back(id);
        }
        if (rest.empty()) continue;
        if (label.is_inflow()) {
            for (EdgeId id : rest) roles_[id] = EdgeRole::Inflow;
            continue;
        }
        if (!label.is_cerebral_tree() && !label.is_unlabeled()) {
            throw InvariantViolation(label.name() + " edge " + std::to_string(rest.front()) +
                                     " is not part of the Circle of Willis");
        }
        for (EdgeId id : rest) {
            if (g.edge(id).dashed) {
                throw InvariantViolation("dashed edge " + std::to_string(id) + " is not on the ring");
            }
        }
        SubTree tree;
        tree.label = label;
        const auto roots = roots_of(g, rest);
        tree.attachment = g.edge(roots.front()).from;
        for (EdgeId r : roots) {
            if (g.edge(r).from != tree.attachment) {
                throw InvariantViolation(label.name() + " has more than one attachment node");
            }
        }
        for (EdgeId child : g.out_edges(tree.attachment)) {
            if (std::find(roots.begin(), roots.end(), child) != roots.end()) tree.root_edges.push_back(child);
        }
        // Contraction ids are preorder, so id order is preorder within the set.
        tree.edges = rest;
        std::sort(tree.edges.begin(), tree.edges.end());
        std::map<NodeId, int> depth{{tree.attachment, 0}};
        for (EdgeId id : tree.edges) {
            const auto& e = g.edge(id);
            depth[e.to] = depth.at(e.from) + 1;
            layers_[id] = depth[e.to];
            owner_[id] = label;
            roles_[id] = label.is_unlabeled() ? EdgeRole::UnlabeledTree : EdgeRole::CerebralTree;
        }
        (label.is_unlabeled() ? unlabeled_ : cerebral_).emplace(label, std::move(tree));
    }

    const auto complete = [](const CowSide& cs) { return cs.posterior && cs.pcomm && cs.carotid; };
    if (ring_.acomm && complete(ring_.left) && complete(ring_.right)) {
        for (const auto* path : {&ring_.left.posterior, &ring_.left.pcomm, &ring_.left.carotid}) {
            cow_cycle_.insert(cow_cycle_.end(), (*path)->begin(), (*path)->end());
        }
        cow_cycle_.push_back(*ring_.acomm);
        for (const auto* path : {&ring_.right.carotid, &ring_.right.pcomm, &ring_.right.posterior}) {
            cow_cycle_.insert(cow_cycle_.end(), (*path)->rbegin(), (*path)->rend());
        }
    }
}

LabeledNetwork reconstruct_cow(const LabeledNetwork& network) {
    const CowRing& ring = network.ring();
    std::vector<std::string> missing;
    if (!ring.ba_bifurcation) missing.push_back("BA");
    if (!ring.left.ic_junction) missing.push_back("IC_L");
    if (!ring.right.ic_junction) missing.push_back("IC_R");
    if (!missing.empty()) throw CannotClose(missing);
    if (network.ring_closed()) return network;

    VesselGraph g = network.graph();
    auto labels = network.labels();
    const NodeId B = *ring.ba_bifurcation;
    const auto add = [&](NodeId a, NodeId b, ArteryLabel label) {
        const EdgeId id = g.add_dashed_edge(a, b, dashed_radius(g, a, b));
        labels[id] = label;
    };
    for (Side s : {Side::Left, Side::Right}) {
        const CowSide& cs = ring.side(s);
        const auto pcomm = ArteryLabel::named(ArteryLabel::Kind::PComm, s);
        if (cs.pca_junction && !cs.posterior) add(B, *cs.pca_junction, pcomm);
        if (!cs.pcomm) add(cs.pca_junction.value_or(B), *cs.ic_junction, pcomm);
        if (!cs.carotid) add(*cs.ic_junction, *cs.carotid_terminus, ArteryLabel::named(ArteryLabel::Kind::ACA, s));
    }
    if (!ring.acomm) add(*ring.left.carotid_terminus, *ring.right.carotid_terminus, ArteryLabel::acomm());

    LabeledNetwork out(std::move(g), std::move(labels));
    if (!out.ring_closed()) throw CannotClose({"ring path"});
    return out;
}

LabeledNetwork apply_label_overrides(const LabeledNetwork& network,
                                     const std::map<EdgeId, ArteryLabel>& overrides) {
    const VesselGraph& g = network.graph();
    for (const auto& [id, label] : overrides) {
        if (!g.has_edge(id)) throw UnknownEdge(id);
        if (label.is_unlabeled()) {
            throw InvariantViolation("edge " + std::to_string(id) + " cannot be overridden to " + label.name());
        }
    }
    const auto& old = network.labels();
    auto next = old;
    for (const auto& [id, label] : overrides) next[id] = label;
    for (const auto& e : g.edges()) {
        if (overrides.count(e.id)) continue;
        const auto p = g.parent_edge(e.id);
        if (!p) continue;
        const ArteryLabel parent_new = next.at(*p);
        if (parent_new == old.at(*p) || !parent_new.is_cerebral_tree()) continue;
        const ArteryLabel mine = old.at(e.id);
        if (mine == old.at(*p) || mine.is_unlabeled()) next[e.id] = parent_new;
    }
    return LabeledNetwork(g, std::move(next));
}

std::map<EdgeId, ArteryLabel> parse_label_overrides(std::string_view text, const VesselGraph& graph) {
    const auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    const auto parse_int = [](std::string_view s, int line) {
        int v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            throw std::invalid_argument("override line " + std::to_string(line) + ": bad id '" + std::string(s) + "'");
        }
        return v;
    };

    std::map<EdgeId, ArteryLabel> out;
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("override line " + std::to_string(line_no) + ": expected key = label");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        const auto label = ArteryLabel::parse(value);
        if (!label) {
            throw std::invalid_argument("override line " + std::to_string(line_no) + ": unknown label '" +
                                        std::string(value) + "'");
        }
        EdgeId id = 0;
        if (key.substr(0, 4) == "seg:") {
            const int seg = parse_int(trim(key.substr(4)), line_no);
            for (const auto& e : graph.edges()) {
                if (std::find(e.segment_ids.begin(), e.segment_ids.end(), seg) != e.segment_ids.end()) id = e.id;
            }
            if (id == 0) throw UnknownEdge(seg);
        } else {
            id = parse_int(key, line_no);
            if (!graph.has_edge(id)) throw UnknownEdge(id);
        }
        out[id] = *label;
    }
    return out;
}

VesselGraph without_edges(const VesselGraph& graph, const std::set<EdgeId>& removed) {
    VesselGraph g;
    g.forest_ = graph.forest_;
    g.root_ = graph.root_;
    g.warnings_ = graph.warnings_;
    for (const auto& e : graph.edges_) {
        if (removed.count(e.id)) continue;
        g.index_.emplace(e.id, g.edges_.size());
        g.edges_.push_back(e);
        if (!e.dashed) {
            g.out_[e.from].push_back(e.id);
            g.in_[e.to] = e.id;
        }
    }
    return g;
}

}  // namespace cerebro
