#pragma once

#define BELLKIT_VERSION "0.1.0"

namespace bellkit {
inline constexpr const char* version = BELLKIT_VERSION;
}
