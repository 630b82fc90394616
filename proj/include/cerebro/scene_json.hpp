#pragma once

// Versioned scene JSON, the contract between the engine and the dashboard.

#include <stdexcept>
#include <string>
#include <string_view>

#include "cerebro/layout.hpp"

namespace cerebro {

inline constexpr int kSceneVersion = 1;

/// Wrong version or missing or mistyped fields.
class SchemaMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Text that is not JSON at all.
class MalformedScene : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fixed key order, shortest round-trip number formatting, two-space indent.
std::string export_scene_json(const LayoutScene& scene);

LayoutScene import_scene_json(std::string_view text);

}  // namespace cerebro
