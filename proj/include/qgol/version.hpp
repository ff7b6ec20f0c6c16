#pragma once

#define QGOL_VERSION "0.1.0"

namespace qgol {
inline const char* version() { return QGOL_VERSION; }
} // namespace qgol
