#pragma once

namespace gmgd {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gmgd
