#pragma once

#define POLYFACTOR_VERSION "1.0.0"

namespace polyfactor {
inline const char* version() { return POLYFACTOR_VERSION; }
} // namespace polyfactor
