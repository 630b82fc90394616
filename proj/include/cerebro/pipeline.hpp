#pragma once

// Ingest -> classify -> reconstruct -> layout, as used by the CLI and the
// batch validator.

#include <map>
#include <optional>
#include <string>

#include "cerebro/settings.hpp"

namespace cerebro {

/// Classifies the forest in the canonical frame and closes the ring.
/// Without overrides any classification failure throws
/// ClassificationFailed. With overrides the override labels are applied on
/// top of whatever was classified; a scan with no basilar chain then needs
/// an override for every edge.
LabeledNetwork build_network(const SegmentForest& canonical, const Settings& settings,
                             const std::optional<std::string>& overrides = std::nullopt);

/// Loads the file, maps it into the canonical frame and builds the network.
LabeledNetwork load_network(const std::string& swc_path, const Settings& settings,
                            const std::optional<std::string>& overrides = std::nullopt);

LayoutScene build_scene(const LabeledNetwork& network, const Settings& settings, const std::string& scan_id,
                        const std::optional<FlowAssignment>& flow = std::nullopt);

/// File stem of a path, used as the scene's scan id.
std::string scan_id_of(const std::string& path);

}  // namespace cerebro
