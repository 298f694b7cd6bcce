#pragma once

namespace erpic {

inline constexpr const char* kVersion = "erpic 0.1.0";

}
