#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace cerebro {

enum class Side { None = 0, Left = 1, Right = 2 };

/// Anatomical artery label. Named labels carry an implicit side; the
/// Unlabeled kind carries an explicit side and a per-scan index.
struct ArteryLabel {
    enum class Kind { BA, IC, PComm, AComm, PCA, MCA, ACA, Unlabeled };

    Kind kind = Kind::Unlabeled;
    Side side = Side::None;
    int index = 0;

    static ArteryLabel ba() { return {Kind::BA, Side::None, 0}; }
    static ArteryLabel acomm() { return {Kind::AComm, Side::None, 0}; }
    static ArteryLabel named(Kind kind, Side side) { return {kind, side, 0}; }
    static ArteryLabel unlabeled(Side side, int index) { return {Kind::Unlabeled, side, index}; }

    bool is_cerebral_tree() const {
        return kind == Kind::PCA || kind == Kind::MCA || kind == Kind::ACA;
    }
    bool is_inflow() const { return kind == Kind::BA || kind == Kind::IC; }
    bool is_unlabeled() const { return kind == Kind::Unlabeled; }

    /// "MCA_R", "AComm", "Unlabeled_L_2".
    std::string name() const;
    static std::optional<ArteryLabel> parse(std::string_view text);

    auto operator<=>(const ArteryLabel&) const = default;
};

Side opposite(Side s);
/// "L", "R" or "C" (centerline structures).
const char* side_code(Side s);

/// Swap _L and _R, leaving centerline labels untouched.
ArteryLabel mirrored(ArteryLabel label);

}  // namespace cerebro
