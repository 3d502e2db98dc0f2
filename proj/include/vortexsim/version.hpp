#pragma once

namespace vortexsim {
inline constexpr const char* kVersion = "0.1.0";
}
