#include "cerebro/labels.hpp"

#include <array>
#include <charconv>
#include <utility>

namespace cerebro {

namespace {

constexpr std::array<std::pair<ArteryLabel::Kind, std::string_view>, 8> kKindNames{{
    {ArteryLabel::Kind::BA, "BA"},
    {ArteryLabel::Kind::IC, "IC"},
    {ArteryLabel::Kind::PComm, "PComm"},
    {ArteryLabel::Kind::AComm, "AComm"},
    {ArteryLabel::Kind::PCA, "PCA"},
    {ArteryLabel::Kind::MCA, "MCA"},
    {ArteryLabel::Kind::ACA, "ACA"},
    {ArteryLabel::Kind::Unlabeled, "Unlabeled"},
}};

std::string_view kind_name(ArteryLabel::Kind k) {
    for (const auto& [kind, name] : kKindNames) {
        if (kind == k) return name;
    }
    return "Unlabeled";
}

bool centerline(ArteryLabel::Kind k) {
    return k == ArteryLabel::Kind::BA || k == ArteryLabel::Kind::AComm;
}

std::optional<Side> parse_side(std::string_view s) {
    if (s == "L") return Side::Left;
    if (s == "R") return Side::Right;
    if (s == "C") return Side::None;
    return std::nullopt;
}

}  // namespace

std::string ArteryLabel::name() const {
    std::string out{kind_name(kind)};
    if (kind == Kind::Unlabeled) {
        out += '_';
        out += side_code(side);
        out += '_';
        out += std::to_string(index);
    } else if (!centerline(kind)) {
        out += side == Side::Left ? "_L" : "_R";
    }
    return out;
}

std::optional<ArteryLabel> ArteryLabel::parse(std::string_view text) {
    for (const auto& [kind, name] : kKindNames) {
        if (text.substr(0, name.size()) != name) continue;
        const std::string_view rest = text.substr(name.size());
        if (centerline(kind)) {
            if (rest.empty()) return ArteryLabel{kind, Side::None, 0};
            continue;
        }
        if (kind == Kind::Unlabeled) {
            // Unlabeled_<side>_<index>
            if (rest.size() < 4 || rest[0] != '_' || rest[2] != '_') return std::nullopt;
            const auto side = parse_side(rest.substr(1, 1));
            int index = 0;
            const auto digits = rest.substr(3);
            const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
            if (!side || ec != std::errc{} || ptr != digits.data() + digits.size() || index < 0) {
                return std::nullopt;
            }
            return ArteryLabel{kind, *side, index};
        }
        if (rest == "_L") return ArteryLabel{kind, Side::Left, 0};
        if (rest == "_R") return ArteryLabel{kind, Side::Right, 0};
    }
    return std::nullopt;
}

Side opposite(Side s) {
    switch (s) {
        case Side::Left: return Side::Right;
        case Side::Right: return Side::Left;
        case Side::None: return Side::None;
    }
    return Side::None;
}

const char* side_code(Side s) {
    switch (s) {
        case Side::Left: return "L";
        case Side::Right: return "R";
        case Side::None: return "C";
    }
    return "C";
}

ArteryLabel mirrored(ArteryLabel label) {
    label.side = opposite(label.side);
    return label;
}

}  // namespace cerebro
