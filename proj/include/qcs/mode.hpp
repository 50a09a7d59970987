#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace qcs {

enum class ModeKind { EFaaS, SBQ, PF, SR, PQ };

inline constexpr ModeKind kAllModes[] = {ModeKind::EFaaS, ModeKind::SBQ, ModeKind::PF, ModeKind::SR, ModeKind::PQ};

// Lower-case CLI spelling: efaas, sbq, pf, sr, pq.
std::string_view mode_name(ModeKind mode);
std::optional<ModeKind> parse_mode(std::string_view text);

// Modes that keep a per-session calibration context between shots.
constexpr bool is_session_aware(ModeKind mode) { return mode == ModeKind::EFaaS || mode == ModeKind::SR; }

}  // namespace qcs
