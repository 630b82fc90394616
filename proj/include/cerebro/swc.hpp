#pragma once

// SWC morphology ingestion: parsing, validation, serialization and axis
// normalization into the canonical frame
//   +x lateral (patient left -> right), +y superior, +z anterior.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cerebro/geometry.hpp"

namespace cerebro {

struct SwcRecord {
    int id = 0;
    int type_code = 0;  // carried opaquely
    Vec3 position;
    double radius = 0.0;
    int parent_id = -1;

    friend bool operator==(const SwcRecord&, const SwcRecord&) = default;
};

class SwcError : public std::runtime_error {
public:
    enum class Kind {
        MalformedLine,
        DuplicateId,
        DanglingParent,
        MultipleRoots,
        NoRecords,
        CycleDetected,
        NonPositiveRadius,
    };

    SwcError(Kind kind, std::string message, int line = 0, int id = 0, int parent_id = 0,
             std::vector<int> ids = {});

    Kind kind() const { return kind_; }
    /// 1-based source line, 0 when the forest was not built from text.
    int line() const { return line_; }
    int id() const { return id_; }
    int parent_id() const { return parent_id_; }
    const std::vector<int>& ids() const { return ids_; }

private:
    Kind kind_;
    int line_;
    int id_;
    int parent_id_;
    std::vector<int> ids_;
};

const char* to_string(SwcError::Kind kind);

/// A validated single-rooted tree of SWC records. Records are stored in a
/// topological order (every parent precedes its children) that preserves the
/// source order whenever the source was already topological.
class SegmentForest {
public:
    /// Validates and builds the forest. `source_lines`, when given, maps each
    /// record (same index) to its 1-based line number for diagnostics.
    explicit SegmentForest(std::vector<SwcRecord> records, std::vector<int> source_lines = {});

    const std::vector<SwcRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    int root_id() const { return root_id_; }

    bool contains(int id) const { return index_.count(id) != 0; }
    const SwcRecord& record(int id) const;
    std::size_t index_of(int id) const;
    /// Child ids in record order.
    std::span<const int> children(int id) const;

    friend bool operator==(const SegmentForest& a, const SegmentForest& b) {
        return a.records_ == b.records_;
    }

private:
    std::vector<SwcRecord> records_;
    std::unordered_map<int, std::size_t> index_;
    std::vector<std::vector<int>> children_;
    int root_id_ = -1;
};

SegmentForest parse_swc(std::string_view text);
SegmentForest parse_swc(std::istream& in);
SegmentForest load_swc(const std::string& path);

/// One record per line, shortest round-trip number formatting.
std::string serialize_swc(const SegmentForest& forest, std::string_view header = {});

enum class Axis { X = 0, Y = 1, Z = 2 };

struct SignedAxis {
    Axis axis = Axis::X;
    int sign = 1;
    friend bool operator==(const SignedAxis&, const SignedAxis&) = default;
};

/// Where each canonical axis comes from in the source data. Written as a
/// three-term signed string, lateral first: "+x+y+z", "-z+y+x".
class AxisConvention {
public:
    AxisConvention() = default;
    AxisConvention(SignedAxis lateral, SignedAxis vertical, SignedAxis depth);

    static AxisConvention identity() { return {}; }
    static AxisConvention parse(std::string_view text);

    SignedAxis lateral() const { return axes_[0]; }
    SignedAxis vertical() const { return axes_[1]; }
    SignedAxis depth() const { return axes_[2]; }

    Vec3 map(const Vec3& source) const;
    AxisConvention inverse() const;
    bool right_handed() const;
    std::string to_string() const;

    friend bool operator==(const AxisConvention&, const AxisConvention&) = default;

private:
    std::array<SignedAxis, 3> axes_{SignedAxis{Axis::X, 1}, SignedAxis{Axis::Y, 1},
                                    SignedAxis{Axis::Z, 1}};
};

SegmentForest apply_axis_map(const SegmentForest& forest, const AxisConvention& convention);

}  // namespace cerebro
