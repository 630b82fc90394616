#pragma once

// Batch robustness checks over a directory of scans:
//   C1 the ring is closed, the A. Comm. arcs up, the P. Comms arc down and
//      the left and right ring extents agree within a tolerance;
//   C2 the layout invariants hold;
//   C3 every drawn edge has exactly one polyline per projection, built from
//      the edge's own segments.

#include <string>
#include <vector>

#include "cerebro/settings.hpp"

namespace cerebro {

struct CriterionResult {
    bool pass = false;
    std::vector<std::string> diagnostics;
};

struct ScanReport {
    std::string file;  // file name inside the directory
    bool loaded = false;
    std::string error_kind;  // e.g. "DanglingParent", "ClassificationFailed"
    std::string error;
    CriterionResult c1;
    CriterionResult c2;
    CriterionResult c3;
    double seconds = 0.0;

    bool pass() const { return loaded && c1.pass && c2.pass && c3.pass; }
};

struct BatchReport {
    std::vector<ScanReport> scans;  // sorted by file name

    int passed() const;
    int total() const { return static_cast<int>(scans.size()); }
    bool all_pass() const { return passed() == total(); }
    std::string summary() const;  // "25/25 pass"
    std::string to_json() const;
    std::string to_text() const;
};

CriterionResult check_ring(const LayoutScene& scene, const LabeledNetwork& network, double extent_tolerance);
CriterionResult check_invariants(const LayoutScene& scene, const LabeledNetwork& network);
CriterionResult check_projections(const LayoutScene& scene, const LabeledNetwork& network);

/// Full pipeline plus C1-C3 for one file; never throws.
ScanReport validate_scan(const std::string& path, const Settings& settings);

/// Every *.swc file in `dir`, processed on up to `threads` workers (0 picks
/// the hardware concurrency). Throws std::runtime_error only when the
/// directory itself cannot be read.
BatchReport validate_batch(const std::string& dir, const Settings& settings, unsigned threads = 0);

}  // namespace cerebro
