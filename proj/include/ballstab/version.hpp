#pragma once

namespace ballstab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ballstab
