#pragma once

namespace ddesim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ddesim
