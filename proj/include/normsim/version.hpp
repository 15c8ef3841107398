#pragma once

#include <string_view>

namespace normsim {
inline constexpr std::string_view kArtifactName = "normsim";
inline constexpr std::string_view kVersion = "0.1.0";
}  // namespace normsim
