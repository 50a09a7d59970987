#include "qcs/mode.hpp"

namespace qcs {

std::string_view mode_name(ModeKind mode) {
    switch (mode) {
        case ModeKind::EFaaS: return "efaas";
        case ModeKind::SBQ: return "sbq";
        case ModeKind::PF: return "pf";
        case ModeKind::SR: return "sr";
        case ModeKind::PQ: return "pq";
    }
    return "?";
}

std::optional<ModeKind> parse_mode(std::string_view text) {
    for (ModeKind m : kAllModes)
        if (mode_name(m) == text) return m;
    return std::nullopt;
}

}  // namespace qcs

