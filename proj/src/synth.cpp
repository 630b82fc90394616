#include "cerebro/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace cerebro {

namespace {

using K = ArteryLabel::Kind;

// Fixed radii (mm) of the ring and inflow vessels.
constexpr double kBasilarRadius = 1.5;
constexpr double kP1Radius = 1.2;
constexpr double kPCommRadius = 0.7;
constexpr double kCarotidRadius = 2.2;
constexpr double kTerminusRadius = 2.0;

class Builder {
public:
    Builder(std::uint64_t seed, const SynthParams& p) : rng_(seed), p_(p) {}

    // Uniform in [lo, hi); std distributions are not portable bit-for-bit.
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    int root(Vec3 pos, double radius, ArteryLabel label) {
        return add(pos, radius, -1, label);
    }

    // Straight chain from the position of `from` to `to`; returns the last record id.
    int chain(int from, Vec3 to, double radius, ArteryLabel label) {
        const Vec3 a = records_[from - 1].position;
        const double len = distance(a, to);
        const int n = std::max(1, static_cast<int>(std::lround(len / p_.step)));
        int prev = from;
        for (int i = 1; i <= n; ++i) {
            Vec3 pos = a + (to - a) * (static_cast<double>(i) / n);
            if (i < n) pos = jitter(pos);
            prev = add(pos, radius, prev, label);
        }
        return prev;
    }

    // Polyline through waypoints.
    int path(int from, const std::vector<Vec3>& waypoints, double radius, ArteryLabel label) {
        int cur = from;
        for (const auto& w : waypoints) cur = chain(cur, w, radius, label);
        return cur;
    }

    // Recursive cerebral tree rooted at record `from`.
    void tree(int from, Vec3 dir, double length, double radius, int level, int depth, Vec3 plane,
              ArteryLabel label) {
        const Vec3 start = records_[from - 1].position;
        const Vec3 end = start + normalized(dir) * length;
        const int tip = chain(from, end, radius, label);
        if (level >= depth) return;
        if (level > 0 && uniform(0.0, 1.0) >= p_.branch_probability) return;
        ++bifurcations_;
        const Vec3 d = normalized(dir);
        Vec3 u = normalized(cross(d, plane));
        if (u.norm() < 0.5) u = normalized(cross(d, Vec3{0, 0, 1}));
        const double spread = (30.0 + uniform(0.0, 12.0)) * std::numbers::pi / 180.0;
        const double next_len = std::max(8.0 * p_.step, length * 0.8);
        const Vec3 next_plane = cross(d, u);
        for (int s : {-1, 1}) {
            const Vec3 child = d * std::cos(spread) + u * (s * std::sin(spread));
            tree(tip, child, next_len * uniform(0.9, 1.1), radius * p_.taper, level + 1, depth, next_plane, label);
        }
    }

    int depth() { return p_.min_depth + static_cast<int>(uniform(0.0, p_.max_depth - p_.min_depth + 1 - 1e-12)); }

    SyntheticScan finish() {
        SyntheticScan scan{SegmentForest(records_), std::move(labels_), bifurcations_};
        return scan;
    }

    void count_bifurcation() { ++bifurcations_; }
    Vec3 position(int id) const { return records_[id - 1].position; }

private:
    Vec3 jitter(Vec3 v) {
        const double a = p_.noise * p_.step;
        return {v.x + uniform(-a, a), v.y + uniform(-a, a), v.z + uniform(-a, a)};
    }

    int add(Vec3 pos, double radius, int parent, ArteryLabel label) {
        const int id = static_cast<int>(records_.size()) + 1;
        const double r = radius * (1.0 + uniform(-p_.noise, p_.noise));
        records_.push_back({id, 3, pos, r, parent});
        if (parent != -1) labels_[id] = label;
        return id;
    }

    std::mt19937_64 rng_;
    SynthParams p_;
    std::vector<SwcRecord> records_;
    std::map<int, ArteryLabel> labels_;
    int bifurcations_ = 0;
};

}  // namespace

SyntheticScan generate_synthetic_scan(std::uint64_t seed, const SynthParams& params) {
    Builder b(seed, params);
    const double taper = params.taper;
    const Vec3 up{0, 1, 0};

    const int base = b.root({0, -30, -12}, kBasilarRadius, ArteryLabel::ba());
    const int bif = b.chain(base, {0, 0, -12}, kBasilarRadius, ArteryLabel::ba());
    b.count_bifurcation();

    for (Side s : {Side::Left, Side::Right}) {
        const double sx = s == Side::Left ? -1.0 : 1.0;
        const auto L = [s](K k) { return ArteryLabel::named(k, s); };

        const int j = b.chain(bif, {sx * 7, 0.5, -13}, kP1Radius, L(K::PComm));
        b.count_bifurcation();
        b.tree(j, {sx * 0.4, 0.5, -1.0}, 14.0, kP1Radius * taper, 0, b.depth(), up, L(K::PCA));

        const int c = b.chain(j, {sx * 12, 0, 2}, kPCommRadius, L(K::PComm));
        b.count_bifurcation();

        // Carotid siphon: down, outward, down again.
        const double shift = b.uniform(5.0, 8.0);
        const Vec3 cp = b.position(c);
        if (s == Side::Left && params.truncate_left_ic) {
            b.chain(c, cp + Vec3{0, -3, 0}, kCarotidRadius, L(K::IC));
        } else {
            const double first = b.uniform(8.0, 12.0);
            b.path(c,
                   {cp + Vec3{0, -first, 0}, cp + Vec3{sx * shift, -first, 0},
                    Vec3{cp.x + sx * shift, -40.0, cp.z}},
                   kCarotidRadius, L(K::IC));
        }

        const int t = b.chain(c, {sx * 15, 2, 4}, kTerminusRadius, L(K::ACA));
        b.count_bifurcation();
        b.tree(t, {-sx * 0.25, 0.8, 0.6}, 14.0, kTerminusRadius * taper, 0, b.depth(), {0, 0, 1}, L(K::ACA));
        b.tree(t, {sx * 1.0, 0.5, 0.1}, 16.0, kTerminusRadius * taper, 0, b.depth(), {0, 0, 1}, L(K::MCA));
    }
    return b.finish();
}

std::map<EdgeId, ArteryLabel> edge_truth(const SyntheticScan& scan, const VesselGraph& graph) {
    std::map<EdgeId, ArteryLabel> out;
    for (const auto& e : graph.edges()) {
        if (e.dashed || e.segment_ids.empty()) continue;
        const auto it = scan.record_labels.find(e.segment_ids.back());
        if (it != scan.record_labels.end()) out[e.id] = it->second;
    }
    return out;
}

SegmentForest mirror_lateral(const SegmentForest& forest) {
    auto records = forest.records();
    for (auto& r : records) r.position.x = -r.position.x;
    return SegmentForest(std::move(records));
}

SegmentForest remove_subtree(const SegmentForest& forest, int record_id) {
    std::set<int> dropped{record_id};
    std::vector<int> stack{record_id};
    while (!stack.empty()) {
        const int id = stack.back();
        stack.pop_back();
        for (int c : forest.children(id)) {
            dropped.insert(c);
            stack.push_back(c);
        }
    }
    std::vector<SwcRecord> kept;
    for (const auto& r : forest.records()) {
        if (!dropped.count(r.id)) kept.push_back(r);
    }
    return SegmentForest(std::move(kept));
}

}  // namespace cerebro
