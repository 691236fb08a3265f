#pragma once

namespace banos {

inline constexpr const char* kVersion = "0.1.0";

} // namespace banos
