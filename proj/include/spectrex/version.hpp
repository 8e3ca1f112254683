#pragma once

namespace spectrex {

inline constexpr const char* engine_version = "0.1.0";
inline constexpr int schema_version = 1;

} // namespace spectrex
