#pragma once

namespace wzcert {

inline constexpr const char* kEngineVersion = "0.1.0";

}  // namespace wzcert
