#pragma once

namespace lgg {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lgg
