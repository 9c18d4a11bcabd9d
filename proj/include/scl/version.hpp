#pragma once

namespace scl {

// Reported by the CLI and recorded in run manifests.
inline constexpr const char* library_version = "0.1.0";

}  // namespace scl
