#include "cerebro/swc.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <iterator>
#include <queue>
#include <sstream>

namespace cerebro {

SwcError::SwcError(Kind kind, std::string message, int line, int id, int parent_id,
                   std::vector<int> ids)
    : std::runtime_error(std::move(message)),
      kind_(kind),
      line_(line),
      id_(id),
      parent_id_(parent_id),
      ids_(std::move(ids)) {}

const char* to_string(SwcError::Kind kind) {
    switch (kind) {
        case SwcError::Kind::MalformedLine: return "MalformedLine";
        case SwcError::Kind::DuplicateId: return "DuplicateId";
        case SwcError::Kind::DanglingParent: return "DanglingParent";
        case SwcError::Kind::MultipleRoots: return "MultipleRoots";
        case SwcError::Kind::NoRecords: return "NoRecords";
        case SwcError::Kind::CycleDetected: return "CycleDetected";
        case SwcError::Kind::NonPositiveRadius: return "NonPositiveRadius";
    }
    return "Unknown";
}

namespace {

std::string at_line(int line) {
    return line > 0 ? " (line " + std::to_string(line) + ")" : std::string{};
}

}  // namespace

SegmentForest::SegmentForest(std::vector<SwcRecord> records, std::vector<int> source_lines) {
    if (source_lines.size() != records.size()) source_lines.assign(records.size(), 0);
    if (records.empty()) throw SwcError(SwcError::Kind::NoRecords, "SWC input has no records");

    std::unordered_map<int, std::size_t> index;
    index.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (!index.emplace(r.id, i).second) {
            throw SwcError(SwcError::Kind::DuplicateId,
                           "duplicate record id " + std::to_string(r.id) + at_line(source_lines[i]),
                           source_lines[i], r.id);
        }
        if (!(r.radius > 0.0) || !std::isfinite(r.radius)) {
            throw SwcError(SwcError::Kind::NonPositiveRadius,
                           "record " + std::to_string(r.id) + " has non-positive radius" +
                               at_line(source_lines[i]),
                           source_lines[i], r.id);
        }
    }

    std::vector<int> roots;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.parent_id == -1) {
            roots.push_back(r.id);
        } else if (!index.count(r.parent_id)) {
            throw SwcError(SwcError::Kind::DanglingParent,
                           "record " + std::to_string(r.id) + " refers to missing parent " +
                               std::to_string(r.parent_id) + at_line(source_lines[i]),
                           source_lines[i], r.id, r.parent_id);
        }
    }
    if (roots.size() > 1) {
        std::string list;
        for (int id : roots) list += (list.empty() ? "" : ", ") + std::to_string(id);
        throw SwcError(SwcError::Kind::MultipleRoots, "multiple root records: " + list, 0, roots[0],
                       -1, roots);
    }

    std::vector<std::vector<std::size_t>> kids(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].parent_id != -1) kids[index.at(records[i].parent_id)].push_back(i);
    }

    // Kahn ordering, smallest source index first, keeps topological sources unchanged.
    std::vector<std::size_t> order;
    order.reserve(records.size());
    if (!roots.empty()) {
        std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
        ready.push(index.at(roots.front()));
        while (!ready.empty()) {
            const std::size_t i = ready.top();
            ready.pop();
            order.push_back(i);
            for (std::size_t k : kids[i]) ready.push(k);
        }
    }
    if (order.size() != records.size()) {
        std::vector<bool> seen(records.size(), false);
        for (std::size_t i : order) seen[i] = true;
        const auto it = std::find(seen.begin(), seen.end(), false);
        const auto i = static_cast<std::size_t>(std::distance(seen.begin(), it));
        throw SwcError(SwcError::Kind::CycleDetected,
                       "record " + std::to_string(records[i].id) +
                           " does not reach the root (parent cycle)" + at_line(source_lines[i]),
                       source_lines[i], records[i].id, records[i].parent_id);
    }

    records_.reserve(records.size());
    for (std::size_t i : order) records_.push_back(records[i]);
    root_id_ = roots.front();
    index_.reserve(records_.size());
    for (std::size_t i = 0; i < records_.size(); ++i) index_.emplace(records_[i].id, i);
    children_.resize(records_.size());
    for (const auto& r : records_) {
        if (r.parent_id != -1) children_[index_.at(r.parent_id)].push_back(r.id);
    }
}

const SwcRecord& SegmentForest::record(int id) const { return records_[index_of(id)]; }

std::size_t SegmentForest::index_of(int id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) throw std::out_of_range("no SWC record with id " + std::to_string(id));
    return it->second;
}

std::span<const int> SegmentForest::children(int id) const { return children_[index_of(id)]; }

namespace {

template <typename T>
bool parse_number(std::string_view field, T& out) {
    const char* first = field.data();
    const char* last = field.data() + field.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last) return false;
    if constexpr (std::is_floating_point_v<T>) return std::isfinite(out);
    return true;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    const auto is_space = [](char c) {
        return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v';
    };
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) ++i;
        const std::size_t start = i;
        while (i < line.size() && !is_space(line[i])) ++i;
        if (i > start) fields.push_back(line.substr(start, i - start));
    }
    return fields;
}

SwcError malformed(int line, const std::string& why) {
    return SwcError(SwcError::Kind::MalformedLine,
                    "malformed SWC line " + std::to_string(line) + ": " + why, line);
}

}  // namespace

SegmentForest parse_swc(std::string_view text) {
    std::vector<SwcRecord> records;
    std::vector<int> lines;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        const auto fields = split_fields(line);
        if (fields.empty() || fields.front().front() == '#') {
            if (end == text.size()) break;
            continue;
        }
        if (fields.size() != 7) {
            throw malformed(line_no, "expected 7 fields, found " + std::to_string(fields.size()));
        }
        SwcRecord r;
        if (!parse_number(fields[0], r.id) || r.id <= 0) throw malformed(line_no, "bad id");
        if (!parse_number(fields[1], r.type_code)) throw malformed(line_no, "bad type");
        if (!parse_number(fields[2], r.position.x) || !parse_number(fields[3], r.position.y) ||
            !parse_number(fields[4], r.position.z)) {
            throw malformed(line_no, "bad coordinate");
        }
        if (!parse_number(fields[5], r.radius)) throw malformed(line_no, "bad radius");
        if (!parse_number(fields[6], r.parent_id)) throw malformed(line_no, "bad parent id");
        if (r.radius <= 0.0) {
            throw SwcError(SwcError::Kind::NonPositiveRadius,
                           "record " + std::to_string(r.id) + " has non-positive radius (line " +
                               std::to_string(line_no) + ")",
                           line_no, r.id);
        }
        records.push_back(r);
        lines.push_back(line_no);
        if (end == text.size()) break;
    }
    return SegmentForest(std::move(records), std::move(lines));
}

SegmentForest parse_swc(std::istream& in) {
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_swc(std::string_view{text});
}

SegmentForest load_swc(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_swc(in);
}

namespace {

void append_number(std::string& out, double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, ptr);
}

}  // namespace

std::string serialize_swc(const SegmentForest& forest, std::string_view header) {
    std::string out;
    if (!header.empty()) {
        std::istringstream lines{std::string(header)};
        for (std::string line; std::getline(lines, line);) out += "# " + line + "\n";
    }
    for (const auto& r : forest.records()) {
        out += std::to_string(r.id);
        out += ' ';
        out += std::to_string(r.type_code);
        out += ' ';
        append_number(out, r.position.x);
        out += ' ';
        append_number(out, r.position.y);
        out += ' ';
        append_number(out, r.position.z);
        out += ' ';
        append_number(out, r.radius);
        out += ' ';
        out += std::to_string(r.parent_id);
        out += '\n';
    }
    return out;
}

AxisConvention::AxisConvention(SignedAxis lateral, SignedAxis vertical, SignedAxis depth)
    : axes_{lateral, vertical, depth} {
    if (lateral.axis == vertical.axis || lateral.axis == depth.axis || vertical.axis == depth.axis) {
        throw std::invalid_argument("axis convention must use three distinct axes");
    }
    for (const auto& a : axes_) {
        if (a.sign != 1 && a.sign != -1) throw std::invalid_argument("axis sign must be +1 or -1");
    }
}

AxisConvention AxisConvention::parse(std::string_view text) {
    std::array<SignedAxis, 3> axes{};
    std::size_t pos = 0;
    for (auto& a : axes) {
        if (pos + 2 > text.size()) throw std::invalid_argument("bad axis convention: " + std::string(text));
        const char s = text[pos];
        const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(text[pos + 1])));
        if (s != '+' && s != '-') throw std::invalid_argument("bad axis sign in: " + std::string(text));
        a.sign = s == '+' ? 1 : -1;
        if (c == 'x') a.axis = Axis::X;
        else if (c == 'y') a.axis = Axis::Y;
        else if (c == 'z') a.axis = Axis::Z;
        else throw std::invalid_argument("bad axis letter in: " + std::string(text));
        pos += 2;
    }
    if (pos != text.size()) throw std::invalid_argument("bad axis convention: " + std::string(text));
    return AxisConvention(axes[0], axes[1], axes[2]);
}

namespace {

double component(const Vec3& v, Axis a) {
    switch (a) {
        case Axis::X: return v.x;
        case Axis::Y: return v.y;
        case Axis::Z: return v.z;
    }
    return 0.0;
}

}  // namespace

Vec3 AxisConvention::map(const Vec3& source) const {
    return {axes_[0].sign * component(source, axes_[0].axis),
            axes_[1].sign * component(source, axes_[1].axis),
            axes_[2].sign * component(source, axes_[2].axis)};
}

AxisConvention AxisConvention::inverse() const {
    std::array<SignedAxis, 3> inv{};
    for (int canonical = 0; canonical < 3; ++canonical) {
        const auto& a = axes_[static_cast<std::size_t>(canonical)];
        inv[static_cast<std::size_t>(a.axis)] = SignedAxis{static_cast<Axis>(canonical), a.sign};
    }
    return AxisConvention(inv[0], inv[1], inv[2]);
}

bool AxisConvention::right_handed() const {
    auto unit = [](SignedAxis a) {
        Vec3 v;
        if (a.axis == Axis::X) v.x = a.sign;
        if (a.axis == Axis::Y) v.y = a.sign;
        if (a.axis == Axis::Z) v.z = a.sign;
        return v;
    };
    return dot(cross(unit(axes_[0]), unit(axes_[1])), unit(axes_[2])) > 0.0;
}

std::string AxisConvention::to_string() const {
    std::string out;
    for (const auto& a : axes_) {
        out += a.sign > 0 ? '+' : '-';
        out += "xyz"[static_cast<int>(a.axis)];
    }
    return out;
}

SegmentForest apply_axis_map(const SegmentForest& forest, const AxisConvention& convention) {
    std::vector<SwcRecord> mapped = forest.records();
    for (auto& r : mapped) r.position = convention.map(r.position);
    return SegmentForest(std::move(mapped));
}

}  // namespace cerebro
