#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cerebro/network.hpp"

namespace cerebro {

struct ClassifyConfig {
    // IC candidates must descend further than this fraction of the scan's
    // total vertical extent below the carotid junction.
    double ic_min_drop = 0.3;
};

/// Stage numbers: 1 basilar chain, 2 PCA / P. Comm. split, 3 IC junction,
/// 4 ACA / MCA split, 5 side assignment.
struct ClassificationFailure {
    int stage = 0;
    NodeId node = 0;
    Side side = Side::None;
    std::string message;
};

class ClassificationFailed : public std::runtime_error {
public:
    explicit ClassificationFailed(std::vector<ClassificationFailure> failures);
    const std::vector<ClassificationFailure>& failures() const { return failures_; }
    int stage() const { return failures_.empty() ? 0 : failures_.front().stage; }
    NodeId node() const { return failures_.empty() ? 0 : failures_.front().node; }

private:
    std::vector<ClassificationFailure> failures_;
};

struct Classification {
    // Absent only when the basilar chain itself cannot be found. A failed
    // side is left Unlabeled while the other side keeps its labels.
    std::optional<LabeledNetwork> network;
    std::vector<ClassificationFailure> failures;

    bool ok() const { return network && failures.empty(); }
};

Classification classify_arteries(const VesselGraph& graph, const ClassifyConfig& config = {});

/// Throws ClassificationFailed on any failure.
LabeledNetwork classify_arteries_strict(const VesselGraph& graph, const ClassifyConfig& config = {});

}  // namespace cerebro
