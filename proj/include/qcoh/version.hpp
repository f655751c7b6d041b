#pragma once

namespace qcoh {

inline constexpr const char* kVersion = "0.1.0";

} // namespace qcoh
