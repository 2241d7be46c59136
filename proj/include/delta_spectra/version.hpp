#pragma once

namespace delta_spectra {

inline constexpr const char* kVersion = "0.1.0";

} // namespace delta_spectra
