#pragma once

namespace csg {

inline constexpr const char* kToolVersion = "csg 0.1.0";

}  // namespace csg
