#pragma once

namespace l1x {
inline constexpr const char* kVersion = "0.1.0";
}
